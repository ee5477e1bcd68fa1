pub mod exactnum;
pub mod mpoly;
pub mod partlib;
pub mod jackcore;
pub mod hermlag;
pub mod macdonald;
pub mod clustercli;
