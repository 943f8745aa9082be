//! Words, the word problem, van Kampen diagrams and experiments for the
//! group `G = ⟨θ₁, θ₂, a, k | a^{θᵢ} = a, k^{θᵢ} = ka⟩`.

pub mod ball;
pub mod britton;
pub mod diagram;
pub mod error;
pub mod experiments;
pub mod fill;
pub mod normal_form;
pub mod presentation;
pub mod word;

pub use ball::{build_ball, build_ball_capped, geodesic_distance, BallIndex, Distance};
pub use diagram::Diagram;
pub use error::{Error, ParseError};
pub use normal_form::{commutator_word, is_identity, normal_form, phi_power, NormalForm};
pub use presentation::{Relator, RelatorId};
pub use word::{Generator, Letter, Word};
