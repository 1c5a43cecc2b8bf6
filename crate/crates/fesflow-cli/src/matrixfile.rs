//! Plain-text matrix files for measurement/ensemble scenarios.
//!
//! Format: each matrix is introduced by a header line `#name rows cols`,
//! followed by `rows * cols` whitespace-separated complex entries in
//! row-major order, written as `re+imj` (plain reals are fine). Entries
//! may span lines; anything after the expected count and before the next
//! header is an error.
//!
//! Scenario conventions on top of the raw format:
//!
//! - one-way: `prior` (1 x n), `state0..state{n-1}` (d x d),
//!   `povm0..povm{m-1}` (d x d)
//! - two-way (optional): additionally `right_prior`, `right_state*` and a
//!   unitary `scattering` on the product space; the `povm*` matrices then
//!   act as the right-end detector on the first factor.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use fesflow::qinfo::{CMatrix, DensityMatrix, Ensemble, Povm, QinfoError, TwoWayChannel};
use num_complex::Complex64;

/// Parse or assembly failure for scenario files.
#[derive(Debug)]
pub enum MatrixFileError {
    /// Malformed header or entry token.
    Parse {
        /// 1-based line number.
        line: usize,
        /// What went wrong.
        message: String,
    },
    /// A required matrix is missing.
    Missing(&'static str),
    /// A matrix has the wrong shape for its role.
    Shape {
        /// Matrix name.
        name: String,
        /// Explanation.
        message: String,
    },
    /// The assembled objects fail their quantum-layer validation.
    Invalid(QinfoError),
}

impl fmt::Display for MatrixFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixFileError::Parse { line, message } => write!(f, "line {line}: {message}"),
            MatrixFileError::Missing(name) => write!(f, "scenario is missing matrix `{name}`"),
            MatrixFileError::Shape { name, message } => write!(f, "matrix `{name}`: {message}"),
            MatrixFileError::Invalid(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for MatrixFileError {}

impl From<QinfoError> for MatrixFileError {
    fn from(e: QinfoError) -> Self {
        MatrixFileError::Invalid(e)
    }
}

/// Parses matrices from the plain-text format, keyed by name.
pub fn parse_matrices(text: &str) -> Result<BTreeMap<String, CMatrix>, MatrixFileError> {
    let mut out = BTreeMap::new();
    let mut current: Option<(String, usize, usize, Vec<Complex64>)> = None;

    let mut finish = |current: &mut Option<(String, usize, usize, Vec<Complex64>)>,
                      line: usize|
     -> Result<(), MatrixFileError> {
        if let Some((name, rows, cols, entries)) = current.take() {
            if entries.len() != rows * cols {
                return Err(MatrixFileError::Parse {
                    line,
                    message: format!(
                        "matrix `{name}` declares {rows}x{cols} but has {} entries",
                        entries.len()
                    ),
                });
            }
            out.insert(name, CMatrix::from_row_slice(rows, cols, &entries));
        }
        Ok(())
    };

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(header) = line.strip_prefix('#') {
            finish(&mut current, line_no)?;
            let mut parts = header.split_whitespace();
            let name = parts.next().ok_or(MatrixFileError::Parse {
                line: line_no,
                message: "header without a name".into(),
            })?;
            let rows: usize =
                parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or(MatrixFileError::Parse {
                        line: line_no,
                        message: "header needs `#name rows cols`".into(),
                    })?;
            let cols: usize =
                parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or(MatrixFileError::Parse {
                        line: line_no,
                        message: "header needs `#name rows cols`".into(),
                    })?;
            if parts.next().is_some() {
                return Err(MatrixFileError::Parse {
                    line: line_no,
                    message: "trailing tokens after header".into(),
                });
            }
            if rows == 0 || cols == 0 {
                return Err(MatrixFileError::Parse {
                    line: line_no,
                    message: "zero-sized matrix".into(),
                });
            }
            current = Some((name.to_owned(), rows, cols, Vec::with_capacity(rows * cols)));
            continue;
        }
        let Some((name, rows, cols, entries)) = current.as_mut() else {
            return Err(MatrixFileError::Parse {
                line: line_no,
                message: "entries before any `#name rows cols` header".into(),
            });
        };
        for token in line.split_whitespace() {
            if entries.len() >= *rows * *cols {
                return Err(MatrixFileError::Parse {
                    line: line_no,
                    message: format!("too many entries for matrix `{name}`"),
                });
            }
            let value = Complex64::from_str(token).map_err(|_| MatrixFileError::Parse {
                line: line_no,
                message: format!("cannot parse complex entry `{token}`"),
            })?;
            entries.push(value);
        }
    }
    finish(&mut current, text.lines().count())?;
    Ok(out)
}

/// Writes matrices in the same format, sorted by name.
#[cfg(test)]
pub fn write_matrices(matrices: &BTreeMap<String, CMatrix>) -> String {
    let mut out = String::new();
    for (name, m) in matrices {
        out.push_str(&format!("#{name} {} {}\n", m.nrows(), m.ncols()));
        for i in 0..m.nrows() {
            let row: Vec<String> = (0..m.ncols())
                .map(|j| {
                    let v = m[(i, j)];
                    if v.im == 0.0 {
                        format!("{}", v.re)
                    } else if v.im < 0.0 {
                        format!("{}{}j", v.re, v.im)
                    } else {
                        format!("{}+{}j", v.re, v.im)
                    }
                })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

fn real_vector(name: &str, m: &CMatrix) -> Result<Vec<f64>, MatrixFileError> {
    if m.nrows() != 1 && m.ncols() != 1 {
        return Err(MatrixFileError::Shape {
            name: name.to_owned(),
            message: "expected a vector".into(),
        });
    }
    let mut out = Vec::with_capacity(m.len());
    for v in m.iter() {
        if v.im != 0.0 {
            return Err(MatrixFileError::Shape {
                name: name.to_owned(),
                message: "probabilities must be real".into(),
            });
        }
        out.push(v.re);
    }
    Ok(out)
}

fn collect_indexed<'a>(matrices: &'a BTreeMap<String, CMatrix>, prefix: &str) -> Vec<&'a CMatrix> {
    let mut found = Vec::new();
    for k in 0.. {
        match matrices.get(&format!("{prefix}{k}")) {
            Some(m) => found.push(m),
            None => break,
        }
    }
    found
}

fn ensemble_from(
    matrices: &BTreeMap<String, CMatrix>,
    prior_key: &'static str,
    state_prefix: &str,
) -> Result<Ensemble, MatrixFileError> {
    let prior = real_vector(
        prior_key,
        matrices
            .get(prior_key)
            .ok_or(MatrixFileError::Missing(prior_key))?,
    )?;
    let states = collect_indexed(matrices, state_prefix);
    if states.len() != prior.len() {
        return Err(MatrixFileError::Shape {
            name: prior_key.to_owned(),
            message: format!(
                "prior has {} entries but {} `{state_prefix}*` matrices found",
                prior.len(),
                states.len()
            ),
        });
    }
    let letters = prior
        .into_iter()
        .zip(states)
        .map(|(p, m)| Ok((p, DensityMatrix::new(m.clone())?)))
        .collect::<Result<Vec<_>, MatrixFileError>>()?;
    Ok(Ensemble::new(letters)?)
}

/// A scenario assembled from a matrix file.
pub enum Scenario {
    /// Ensemble plus measurement: check the Holevo bound.
    OneWay(Ensemble, Povm),
    /// Shared channel with scattering: check the generalized bound.
    TwoWay(TwoWayChannel),
}

/// Assembles a scenario from parsed matrices (see module docs for the
/// naming conventions).
pub fn assemble_scenario(
    matrices: &BTreeMap<String, CMatrix>,
) -> Result<Scenario, MatrixFileError> {
    let left = ensemble_from(matrices, "prior", "state")?;
    let povm_elements = collect_indexed(matrices, "povm");
    if povm_elements.is_empty() {
        return Err(MatrixFileError::Missing("povm0"));
    }
    let povm = Povm::new(povm_elements.into_iter().cloned().collect())?;

    match matrices.get("scattering") {
        None => Ok(Scenario::OneWay(left, povm)),
        Some(s) => {
            let right = ensemble_from(matrices, "right_prior", "right_state")?;
            let channel = TwoWayChannel::new(
                left,
                right.clone(),
                s.clone(),
                povm,
                Povm::trivial(right.dim()),
            )?;
            Ok(Scenario::TwoWay(channel))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_headers_and_complex_tokens() {
        let text = "#rho 2 2\n0.75 0.1+0.2j\n0.1-0.2j 0.25\n\n#prior 1 2\n0.5 0.5\n";
        let ms = parse_matrices(text).unwrap();
        assert_eq!(ms.len(), 2);
        let rho = &ms["rho"];
        assert_eq!(rho[(0, 1)], Complex64::new(0.1, 0.2));
        assert_eq!(rho[(1, 0)], Complex64::new(0.1, -0.2));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_matrices("1 2 3").is_err());
        assert!(parse_matrices("#m 2 2\n1 2 3").is_err());
        assert!(parse_matrices("#m 2 2\n1 2 3 4 5").is_err());
        assert!(parse_matrices("#m two 2\n1 2").is_err());
        assert!(parse_matrices("#m 2 2\n1 2 x 4").is_err());
    }

    #[test]
    fn round_trip_through_writer() {
        let text = "#a 1 2\n1+2j -0.5\n#b 2 1\n0 3j\n";
        let ms = parse_matrices(text).unwrap();
        let written = write_matrices(&ms);
        let again = parse_matrices(&written).unwrap();
        assert_eq!(ms, again);
    }

    #[test]
    fn assembles_a_one_way_scenario() {
        let text = "\
#prior 1 2\n0.5 0.5\n\
#state0 2 2\n1 0 0 0\n\
#state1 2 2\n0 0 0 1\n\
#povm0 2 2\n1 0 0 0\n\
#povm1 2 2\n0 0 0 1\n";
        let ms = parse_matrices(text).unwrap();
        match assemble_scenario(&ms).unwrap() {
            Scenario::OneWay(e, p) => {
                assert_eq!(e.len(), 2);
                assert_eq!(p.len(), 2);
            }
            Scenario::TwoWay(_) => panic!("expected one-way"),
        }
    }
}
