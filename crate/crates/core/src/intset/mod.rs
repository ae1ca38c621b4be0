//! Windowed integer sets: FS, SG_d and difference sets, arithmetic
//! progressions, return-time sets, and their unions and intersections,
//! with gap and density diagnostics.

mod descriptor;
mod diagnostics;
mod generate;
mod sequence;
mod window;

pub use descriptor::{eval_window, eval_window_with, support, EvalConfig, SetDescriptor};
pub use diagnostics::{banach_density_upper, syndetic_gap};
pub use generate::{delta_set, generate_fs, generate_fs_bounded, generate_sg, generate_sg_bounded, DEFAULT_MAX_GENERATOR_LEN};
pub use sequence::{Sequence, SequenceSpec};
pub use window::IntegerWindow;
