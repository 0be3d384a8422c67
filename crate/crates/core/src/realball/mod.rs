//! Midpoint-radius arithmetic over exact dyadic numbers, and certified
//! enclosures of trigonometric values at rational multiples of π.

mod ball;
mod complex;
mod dyadic;
mod trig;

pub use ball::{to_decimal, RealBall};
pub use complex::ComplexBall;
pub use dyadic::{Dyadic, Round};
pub use trig::{
    cos_pi, cot_pi, pi, root_of_unity, sin_cos_pi, sin_pi, sqrt_int, sqrt_u64, tan_pi, AngleFraction, TrigTable,
};
