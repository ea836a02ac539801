pub mod algebra;
pub mod check;
pub mod forms;
pub mod liegen;
pub mod linalg;
pub mod triality;
