mod complex;
mod fatgraph;
mod geometry;
mod operad;
mod rna;

use arclab_core::scalar::{Rational, Scalar};
use serde_json::Value;

use crate::error::CliResult;
use crate::json::{self, EdgeData};
use crate::{Command, Context, Report};

pub fn dispatch(cmd: &Command, ctx: &Context) -> CliResult<Report> {
    match cmd {
        Command::Flip(a) => geometry::flip(a),
        Command::Coords(a) => geometry::coords(&a.input),
        Command::Solve(a) => geometry::solve(&a.input, ctx),
        Command::Hull(a) => geometry::hull(a, ctx),
        Command::Delaunay(a) => geometry::delaunay(&a.input),
        Command::WpForm(a) => geometry::wp_form(&a.input),
        Command::ArcComplex(a) => complex::arc_complex(a, ctx),
        Command::Tableaux(a) => complex::tableaux(a),
        Command::Example5 => complex::example5(),
        Command::Fatgraph(a) => fatgraph::fatgraph(a),
        Command::Operad(c) => operad::operad(c, ctx),
        Command::Rna(c) => rna::rna(c, ctx),
    }
}

/// Values that can be written to a report, exactly when they are exact.
pub trait Emit: Scalar {
    fn emit(&self) -> Value;
    fn into_data(v: Vec<Self>) -> EdgeData;
}

impl Emit for f64 {
    fn emit(&self) -> Value {
        json::float(*self)
    }
    fn into_data(v: Vec<Self>) -> EdgeData {
        EdgeData::Float(v)
    }
}

impl Emit for Rational {
    fn emit(&self) -> Value {
        json::rational(self)
    }
    fn into_data(v: Vec<Self>) -> EdgeData {
        EdgeData::Exact(v)
    }
}

pub fn emit_edges<T: Emit>(v: &[T]) -> Value {
    json::edge_map(v.iter().map(Emit::emit))
}
