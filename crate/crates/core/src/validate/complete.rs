//! Filling in unspecified transitions so that a partially written machine becomes well-formed.

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

use crate::model::{CounterSign, HeadMove, Increment, Machine, MachineKind, Symbol, Target};

use super::TOLERANCE;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CompletionError {
    #[error("supplied columns {first} and {second} are not orthonormal (deviation {deviation:e})")]
    NotOrthonormal { first: usize, second: usize, deviation: f64 },
    #[error("column {index} does not fit a {dim}-dimensional space")]
    Shape { index: usize, dim: usize },
    #[error("column {0} supplied twice")]
    DuplicateColumn(usize),
    #[error("state `{0}` is entered by both stationary and rightward moves")]
    MixedHeadDirection(String),
    #[error("{0} machines are completed by hand, not by unitary completion")]
    WrongKind(&'static str),
    #[error("block ({symbol}, {sign}) cannot be completed: {source}")]
    Block {
        symbol: String,
        sign: &'static str,
        #[source]
        source: Box<CompletionError>,
    },
}

/// Extends pairwise orthonormal columns to a `dim × dim` unitary.
///
/// Missing columns are filled in increasing index order by Gram–Schmidt on the
/// canonical basis vectors `e_0, e_1, …`, skipping candidates that are already in the span.
pub fn complete_unitary(columns: &[(usize, DVector<Complex64>)], dim: usize) -> Result<DMatrix<Complex64>, CompletionError> {
    let mut slots: Vec<Option<DVector<Complex64>>> = vec![None; dim];
    for (index, v) in columns {
        if *index >= dim || v.len() != dim {
            return Err(CompletionError::Shape { index: *index, dim });
        }
        if slots[*index].is_some() {
            return Err(CompletionError::DuplicateColumn(*index));
        }
        slots[*index] = Some(v.clone());
    }
    for (i, (ci, vi)) in columns.iter().enumerate() {
        let norm_dev = (vi.norm_squared() - 1.0).abs();
        if norm_dev > TOLERANCE {
            return Err(CompletionError::NotOrthonormal { first: *ci, second: *ci, deviation: norm_dev });
        }
        for (cj, vj) in &columns[i + 1..] {
            let dev = vi.dotc(vj).norm();
            if dev > TOLERANCE {
                return Err(CompletionError::NotOrthonormal { first: *ci, second: *cj, deviation: dev });
            }
        }
    }

    let mut basis: Vec<DVector<Complex64>> = columns.iter().map(|(_, v)| v.clone()).collect();
    let mut candidate = 0;
    for slot in slots.iter_mut().filter(|s| s.is_none()) {
        loop {
            assert!(candidate < dim, "orthonormal set larger than the space");
            let mut v = DVector::<Complex64>::zeros(dim);
            v[candidate] = Complex64::new(1.0, 0.0);
            candidate += 1;
            // two passes of modified Gram–Schmidt
            for _ in 0..2 {
                for b in &basis {
                    let proj = b.dotc(&v);
                    v -= b * proj;
                }
            }
            let norm = v.norm();
            if norm > 1e-8 {
                v.unscale_mut(norm);
                basis.push(v.clone());
                *slot = Some(v);
                break;
            }
        }
    }

    let cols: Vec<DVector<Complex64>> = slots.into_iter().map(|s| s.expect("every column filled")).collect();
    Ok(DMatrix::from_columns(&cols))
}

const DROP_BELOW: f64 = 1e-14;

/// Fills every `(q, σ, θ)` column that has no transitions.
///
/// For each `(σ, θ)` block the rows are the slots `(ω, q', c)` ordered register-major,
/// where the increments `c` into `q'` are those already used on `σ` (or `dc` for simple
/// machines, `0` when `q'` is not entered at all). One-way machines additionally need every
/// state to be entered with a single head direction (`stay` if it is never entered); the
/// completion keeps that direction, so the cross-cell conditions hold vacuously.
pub fn complete_machine(m: &Machine) -> Result<Machine, CompletionError> {
    if m.kind() == MachineKind::Rtp1ca {
        return Err(CompletionError::WrongKind("probabilistic"));
    }
    let states = m.num_states();
    let registers = m.registers().len();

    let mut direction: Vec<Option<HeadMove>> = vec![None; states];
    if m.kind() == MachineKind::OneWay {
        for (_, _, _, targets) in m.columns() {
            for t in targets {
                match (direction[t.to], t.head) {
                    (None, d) => direction[t.to] = d,
                    (Some(d), Some(e)) if d != e => {
                        return Err(CompletionError::MixedHeadDirection(m.states()[t.to].clone()))
                    }
                    _ => {}
                }
            }
        }
        for d in &mut direction {
            d.get_or_insert(HeadMove::Stay);
        }
    }

    let mut out = m.clone();
    for s in m.tape_symbols() {
        let increments = entering_increments(m, s);
        let mut rows: Vec<(usize, usize, Increment)> = Vec::new();
        for w in 0..registers {
            for (q, incs) in increments.iter().enumerate() {
                for &c in incs {
                    rows.push((w, q, c));
                }
            }
        }
        let row_of = |t: &Target| rows.iter().position(|&(w, q, c)| Some(w) == t.register && q == t.to && c == t.inc);

        for sign in CounterSign::ALL {
            let specified: Vec<usize> = (0..states).filter(|&q| !m.targets(q, s, sign).is_empty()).collect();
            if specified.len() == states {
                continue;
            }
            let block_err = |e: CompletionError| CompletionError::Block {
                symbol: m.symbol_name(s).to_string(),
                sign: sign.name(),
                source: Box::new(e),
            };
            let mut columns = Vec::with_capacity(specified.len());
            for &q in &specified {
                let mut v = DVector::<Complex64>::zeros(rows.len());
                for t in m.targets(q, s, sign) {
                    let r = row_of(t).expect("rows cover every used slot");
                    v[r] += t.amp;
                }
                columns.push((q, v));
            }
            let unitary = complete_unitary(&columns, rows.len()).map_err(block_err)?;
            for q in (0..states).filter(|q| !specified.contains(q)) {
                let list = out.targets_mut(q, s, sign);
                for (r, &(w, to, inc)) in rows.iter().enumerate() {
                    let a = unitary[(r, q)];
                    if a.norm() >= DROP_BELOW {
                        list.push(Target { to, inc, head: direction[to], register: Some(w), amp: a });
                    }
                }
            }
        }
    }
    Ok(out)
}

fn entering_increments(m: &Machine, s: Symbol) -> Vec<Vec<Increment>> {
    (0..m.num_states())
        .map(|to| {
            if let Some(c) = m.dc(to, s) {
                return vec![c];
            }
            let used: BTreeSet<Increment> = (0..m.num_states())
                .flat_map(|q| CounterSign::ALL.into_iter().flat_map(move |sign| m.targets(q, s, sign).iter()))
                .filter(|t| t.to == to)
                .map(|t| t.inc)
                .collect();
            if used.is_empty() {
                vec![Increment::Keep]
            } else {
                // Keep first so canonical candidates prefer a stationary counter.
                let mut v: Vec<Increment> = used.into_iter().collect();
                v.sort_by_key(|c| c.value().abs());
                v
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn unitarity_defect(u: &DMatrix<Complex64>) -> f64 {
        let n = u.ncols();
        (u.adjoint() * u - DMatrix::<Complex64>::identity(n, n)).iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn completes_hadamard_column() {
        let h = (0.5f64).sqrt();
        let u = complete_unitary(&[(0, DVector::from_vec(vec![c(h), c(h)]))], 2).unwrap();
        // Gram–Schmidt on e_0 gives (1/√2, −1/√2)
        assert!((u[(0, 1)] - c(h)).norm() < 1e-12);
        assert!((u[(1, 1)] - c(-h)).norm() < 1e-12);
        assert!(unitarity_defect(&u) < 1e-12);
    }

    #[test]
    fn empty_input_gives_identity() {
        let u = complete_unitary(&[], 3).unwrap();
        assert_eq!(u, DMatrix::<Complex64>::identity(3, 3));
    }

    #[test]
    fn parallel_columns_are_rejected() {
        let e0 = DVector::from_vec(vec![c(1.0), c(0.0)]);
        let err = complete_unitary(&[(0, e0.clone()), (1, e0)], 2).unwrap_err();
        assert!(matches!(err, CompletionError::NotOrthonormal { first: 0, second: 1, .. }));
    }

    #[test]
    fn unnormalized_column_is_rejected() {
        let v = DVector::from_vec(vec![c(0.9), c(0.0)]);
        assert!(matches!(complete_unitary(&[(1, v)], 2), Err(CompletionError::NotOrthonormal { first: 1, second: 1, .. })));
    }

    #[test]
    fn column_index_out_of_range() {
        let v = DVector::from_vec(vec![c(1.0), c(0.0)]);
        assert!(matches!(complete_unitary(&[(2, v)], 2), Err(CompletionError::Shape { .. })));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn completion_is_unitary(dim in 1usize..7, seed_cols in prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 14), 0..4)) {
                // orthonormalize random vectors first to get a valid partial input
                let mut supplied: Vec<(usize, DVector<Complex64>)> = Vec::new();
                for (i, raw) in seed_cols.iter().enumerate().take(dim) {
                    let mut v = DVector::from_iterator(dim, (0..dim).map(|k| Complex64::new(raw[2 * k], raw[2 * k + 1])));
                    for _ in 0..2 {
                        for (_, b) in &supplied {
                            let p = b.dotc(&v);
                            v -= b * p;
                        }
                    }
                    let n = v.norm();
                    if n > 1e-3 {
                        v.unscale_mut(n);
                        supplied.push(((i * 5 + 1) % dim, v));
                    }
                }
                supplied.sort_by_key(|(i, _)| *i);
                supplied.dedup_by_key(|(i, _)| *i);
                let u = complete_unitary(&supplied, dim).unwrap();
                prop_assert!(unitarity_defect(&u) <= 1e-9);
                for (i, v) in &supplied {
                    prop_assert_eq!(&u.column(*i).clone_owned(), v);
                }
            }
        }
    }
}
