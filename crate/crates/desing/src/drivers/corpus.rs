//! Built-in golden problems with their known first centers.

use super::{parse_ideal, parse_problem, run_problem, Problem};
use crate::error::Result;

pub struct Golden {
    pub name: &'static str,
    pub source: &'static str,
    /// Every stage-0 center must equal this ideal.
    pub first_center: &'static str,
}

pub const CORPUS: &[Golden] = &[
    Golden {
        name: "monomial-two-divisors",
        source: "vars: x y\nboundary: x y\nmults: x=3, y=3\nb: 2\ntask: monomial\n",
        first_center: "y",
    },
    Golden {
        name: "hypersurface-four-dim",
        source: "vars: x1 x2 x3 x4\nideal: x4^2 + x3^3 + x2*x3^2 + x1^3\nb: 2\nboundary: x3\ntask: resolve\nmaxStages: 6\n",
        first_center: "x1, x3, x4",
    },
    Golden {
        name: "hypersurface-three-dim",
        source: "vars: x1 x2 x3\nideal: x3^3 + x2*x3^2 + x1^3\nb: 2\nboundary: x3\ntask: resolve\nmaxStages: 4\n",
        first_center: "x1, x2, x3",
    },
    Golden {
        name: "surface-in-four-space",
        source: "vars: x y z w\nideal: x^2 + y^2 + z^2 + w^2, x^6 + y^6 + z^6 + w^6\ntask: embedded\nmaxStages: 4\n",
        first_center: "x, y, z, w",
    },
    Golden {
        name: "line-and-plane",
        source: "vars: x1 x2 x3\nideal: x1, x2*x3\ntask: principalize\n",
        first_center: "x1, x2, x3",
    },
    Golden {
        name: "cusp",
        source: "vars: x y\nideal: x^2 - y^3\nb: 2\ntask: resolve\n",
        first_center: "x, y",
    },
    Golden {
        name: "double-line",
        source: "vars: x y\nideal: x^2\nb: 2\ntask: resolve\n",
        first_center: "x",
    },
    Golden {
        name: "whitney-umbrella",
        source: "vars: x y z\nideal: x^2 - y^2*z\ntask: principalize\nmaxStages: 4\n",
        first_center: "x, y, z",
    },
    Golden {
        name: "smooth-curve-embedded",
        source: "vars: x y\nideal: x\ntask: embedded\n",
        first_center: "x",
    },
    Golden {
        name: "cusp-embedded",
        source: "vars: x y\nideal: x^2 - y^3\ntask: embedded\n",
        first_center: "x, y",
    },
];

impl Golden {
    pub fn problem(&self) -> Problem {
        parse_problem(self.source).expect("corpus problems parse")
    }

    /// Runs the problem and compares the stage-0 centers.
    pub fn check(&self) -> Result<std::result::Result<(), String>> {
        let problem = self.problem();
        let run = run_problem(&problem, false)?;
        let expected = parse_ideal(&problem.ring, self.first_center, 1, 1)?;
        let centers = run.centers(0);
        if centers.is_empty() {
            return Ok(Err("no center at stage 0".into()));
        }
        for c in centers {
            if *c != expected {
                return Ok(Err(format!("stage-0 center {} differs from <{}>", c.format(&problem.ring), self.first_center)));
            }
        }
        Ok(Ok(()))
    }
}
