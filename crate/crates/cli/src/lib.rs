//! Problem files, pipeline orchestration, reports and the built-in table
//! corpus for the `qes` command-line tool.

pub mod corpus;
pub mod pipeline;
pub mod problem;
pub mod report;

pub use pipeline::{run_pipeline, ExitClass, RunReport};
pub use problem::{parse_problem_str, prepare, Binding, PreparedProblem, ProblemSpec};
pub use report::CaseReport;
