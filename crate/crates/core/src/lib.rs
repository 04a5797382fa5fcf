pub mod abgrp;
pub mod builtin;
pub mod cellular;
pub mod harness;
pub mod independence;
pub mod linalg;
pub mod workbench;
