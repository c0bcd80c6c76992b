pub mod interp;
pub mod syntax;
pub mod solver;
pub mod oracle;
pub mod typeck;
pub mod frontend;
