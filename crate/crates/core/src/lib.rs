//! Terms with ports over ranked alphabets, their flattening, and the
//! four-kind algebra recognizing densely antiregular trees; with parity
//! games, parity tree automata and run profiles for the regular side.

pub mod antiregular;
pub mod automaton;
pub mod cli;
pub mod game;
pub mod graph;
pub mod kind;
pub mod random;
pub mod suites;
pub mod term;
pub mod text;
