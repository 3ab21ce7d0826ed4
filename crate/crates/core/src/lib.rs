pub mod cli;
pub mod deltacert;
pub mod exactlinalg;
pub mod exactnum;
pub mod globalbounds;
pub mod mvpoly;
pub mod widthlab;
