//! Automata and kernels: the base-4 automaton for `Delta M`, kernel
//! closures witnessing automaticity, and guessed linear representations
//! witnessing regularity.

mod dfao;
mod kernel;
mod linrep;

pub use dfao::{dfao_eval, fig2_automaton, msd_digits, Dfao};
pub use kernel::{kernel_closure, synthesize_dfao, KernelClosure, Label};
pub use linrep::{
    coefficient_height, guess_linear_representation, verify_and_record, verify_linear_representation, LinRep,
};
