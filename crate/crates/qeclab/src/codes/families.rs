//! The code catalogue: explicit small codes, CSS-built codes, concatenations,
//! and the three 2D families (surface/toric, Bacon-Shor, subsystem surface).

use super::css::{css_from_classical, steane_hamming};
use super::{complete_logicals, concatenate, derive_center, CodeError, LogicalPair, StabilizerCode};
use crate::pauli::{parse_pauli, PauliKind, PauliOp};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// Bit-flip repetition code: Z-checks, corrects X errors.
    RepetitionZ { n: usize },
    /// Phase-flip repetition code in the Hadamard-rotated basis: X-checks.
    RepetitionX { n: usize },
    /// [[1,1,1]] identity encoding.
    Trivial,
    /// [[2,1,1]] code detecting single Z errors.
    TwoQubit,
    /// [[4,2,2]] error-detecting code, a.k.a. C4.
    C4,
    /// [[6,2,2]] code C6.
    C6,
    /// C6 with each qubit pair encoded in C4: the [[12,2,4]] code.
    C6C4,
    Shor9,
    Steane7,
    /// [[5,1,3]] cyclic code.
    FiveOneThree,
    Surface { l: usize },
    Toric { l: usize },
    BaconShor { n: usize },
    SubsystemSurface { l: usize },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::RepetitionZ { n } => write!(f, "rep-z n={n}"),
            Family::RepetitionX { n } => write!(f, "rep-x n={n}"),
            Family::Trivial => write!(f, "trivial"),
            Family::TwoQubit => write!(f, "two-qubit"),
            Family::C4 => write!(f, "c4"),
            Family::C6 => write!(f, "c6"),
            Family::C6C4 => write!(f, "c6c4"),
            Family::Shor9 => write!(f, "shor9"),
            Family::Steane7 => write!(f, "steane7"),
            Family::FiveOneThree => write!(f, "five-one-three"),
            Family::Surface { l } => write!(f, "surface L={l}"),
            Family::Toric { l } => write!(f, "toric L={l}"),
            Family::BaconShor { n } => write!(f, "bacon-shor n={n}"),
            Family::SubsystemSurface { l } => write!(f, "subsystem-surface L={l}"),
        }
    }
}

impl Family {
    /// Resolve a family name plus optional size parameters (`--L`, `--n`).
    pub fn parse(name: &str, l: Option<usize>, n: Option<usize>) -> Result<Family, CodeError> {
        let need_l = || {
            l.ok_or_else(|| CodeError::InvalidParameter {
                family: name.into(),
                msg: "requires --L".into(),
            })
        };
        let need_n = || {
            n.ok_or_else(|| CodeError::InvalidParameter {
                family: name.into(),
                msg: "requires --n".into(),
            })
        };
        Ok(match name {
            "rep-z" | "repetition" | "repetition-z" => Family::RepetitionZ { n: need_n()? },
            "rep-x" | "repetition-x" => Family::RepetitionX { n: need_n()? },
            "trivial" => Family::Trivial,
            "two-qubit" => Family::TwoQubit,
            "c4" | "422" => Family::C4,
            "c6" => Family::C6,
            "c6c4" => Family::C6C4,
            "shor9" => Family::Shor9,
            "steane7" | "steane" => Family::Steane7,
            "five-one-three" | "513" => Family::FiveOneThree,
            "surface" => Family::Surface { l: need_l()? },
            "toric" => Family::Toric { l: need_l()? },
            "bacon-shor" | "baconshor" => Family::BaconShor { n: need_n()? },
            "subsystem-surface" => Family::SubsystemSurface { l: need_l()? },
            other => return Err(CodeError::UnknownFamily(other.into())),
        })
    }
}

/// Fixed-size members used by `codes list` and the test suites.
pub fn catalogue() -> Vec<Family> {
    vec![
        Family::RepetitionZ { n: 3 },
        Family::RepetitionX { n: 3 },
        Family::TwoQubit,
        Family::C4,
        Family::C6,
        Family::C6C4,
        Family::Shor9,
        Family::Steane7,
        Family::FiveOneThree,
        Family::Surface { l: 2 },
        Family::Surface { l: 3 },
        Family::Toric { l: 2 },
        Family::BaconShor { n: 3 },
        Family::SubsystemSurface { l: 3 },
    ]
}

pub fn build_named_code(family: &Family) -> Result<StabilizerCode, CodeError> {
    match *family {
        Family::RepetitionZ { n } => repetition(n, PauliKind::Z, family),
        Family::RepetitionX { n } => repetition(n, PauliKind::X, family),
        Family::Trivial => {
            let logicals = vec![LogicalPair {
                x: parse_pauli("X").unwrap(),
                z: parse_pauli("Z").unwrap(),
            }];
            Ok(StabilizerCode::new(1, vec![], logicals, vec![], family.to_string()))
        }
        Family::TwoQubit => explicit(2, &["XX"], &[("XI", "ZZ")], family),
        Family::C4 => explicit(
            4,
            &["XXXX", "ZZZZ"],
            &[("XXII", "ZIZI"), ("IXIX", "IIZZ")],
            family,
        ),
        // C6 checks as published. The published logical set has X2 = X1X2X4
        // anticommuting with Z1 = Z1Z2Z4, so X2 is replaced by the
        // equivalent X1*X2 = X1X3X4 to get a canonical symplectic basis.
        Family::C6 => explicit(
            6,
            &["XIIXXX", "XXXIIX", "ZIIZZZ", "ZZZIIZ"],
            &[("IXXIII", "ZZIZII"), ("XIXXII", "IIIZZI")],
            family,
        ),
        Family::C6C4 => {
            let outer = build_named_code(&Family::C6)?;
            let inner = build_named_code(&Family::C4)?;
            let mut code = concatenate(&outer, &inner, &[vec![0, 1], vec![2, 3], vec![4, 5]])?;
            code.label = family.to_string();
            Ok(code)
        }
        Family::Shor9 => {
            let outer = build_named_code(&Family::RepetitionX { n: 3 })?;
            let inner = build_named_code(&Family::RepetitionZ { n: 3 })?;
            let mut code = concatenate(&outer, &inner, &[vec![0], vec![1], vec![2]])?;
            code.label = family.to_string();
            Ok(code)
        }
        Family::Steane7 => {
            let h = steane_hamming();
            let mut code = css_from_classical(&h, &h)?;
            code.label = family.to_string();
            Ok(code)
        }
        Family::FiveOneThree => explicit(
            5,
            &["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"],
            &[("XXXXX", "ZZZZZ")],
            family,
        ),
        Family::Surface { l } => surface(l, family),
        Family::Toric { l } => toric(l, family),
        Family::BaconShor { n } => bacon_shor(n, family),
        Family::SubsystemSurface { l } => subsystem_surface(l, family),
    }
}

fn explicit(
    n: usize,
    checks: &[&str],
    logicals: &[(&str, &str)],
    family: &Family,
) -> Result<StabilizerCode, CodeError> {
    let stab = checks.iter().map(|s| parse_pauli(s).unwrap()).collect();
    let logicals = logicals
        .iter()
        .map(|(x, z)| LogicalPair {
            x: parse_pauli(x).unwrap(),
            z: parse_pauli(z).unwrap(),
        })
        .collect();
    Ok(StabilizerCode::new(n, stab, logicals, vec![], family.to_string()))
}

fn repetition(n: usize, kind: PauliKind, family: &Family) -> Result<StabilizerCode, CodeError> {
    if n < 2 {
        return Err(CodeError::InvalidParameter {
            family: family.to_string(),
            msg: "n must be at least 2".into(),
        });
    }
    let checks: Vec<PauliOp> = (0..n - 1)
        .map(|i| {
            PauliOp::single(n, i, kind)
                .mul(&PauliOp::single(n, i + 1, kind))
                .unwrap()
        })
        .collect();
    let all = |k: PauliKind| {
        (0..n).fold(PauliOp::identity(n), |acc, q| {
            acc.mul(&PauliOp::single(n, q, k)).unwrap()
        })
    };
    let logicals = match kind {
        // Bit-flip code: Zbar = Z_1, Xbar = X...X.
        PauliKind::Z => vec![LogicalPair {
            x: all(PauliKind::X),
            z: PauliOp::single(n, 0, PauliKind::Z),
        }],
        // Phase-flip code: Xbar = X_1, Zbar = Z...Z.
        PauliKind::X => vec![LogicalPair {
            x: PauliOp::single(n, 0, PauliKind::X),
            z: all(PauliKind::Z),
        }],
        _ => unreachable!(),
    };
    Ok(StabilizerCode::new(n, checks, logicals, vec![], family.to_string()))
}

/// Open-boundary surface code on an L x L lattice: qubits on the edges,
/// L^2 + (L-1)^2 in total. Grid coordinates (r, c) with 0 <= r, c <= 2L-2:
/// qubits sit where r + c is even, plaquette Z-checks at (even, odd), star
/// X-checks at (odd, even). North/south boundaries (rows) are rough: Zbar is
/// a Z-column; east/west are smooth: Xbar is an X-row.
fn surface(l: usize, family: &Family) -> Result<StabilizerCode, CodeError> {
    if l < 2 {
        return Err(CodeError::InvalidParameter {
            family: family.to_string(),
            msg: "L must be at least 2".into(),
        });
    }
    let span = 2 * l - 1;
    let mut index = vec![usize::MAX; span * span];
    let mut coords = Vec::new();
    for r in 0..span {
        for c in 0..span {
            if (r + c) % 2 == 0 {
                index[r * span + c] = coords.len();
                coords.push((r as i32, c as i32));
            }
        }
    }
    let n = coords.len();
    debug_assert_eq!(n, l * l + (l - 1) * (l - 1));
    let star_or_plaq = |r: usize, c: usize, kind: PauliKind| -> PauliOp {
        let mut op = PauliOp::identity(n);
        let mut push = |rr: isize, cc: isize| {
            if rr >= 0 && cc >= 0 && (rr as usize) < span && (cc as usize) < span {
                let q = index[rr as usize * span + cc as usize];
                op = op.mul(&PauliOp::single(n, q, kind)).unwrap();
            }
        };
        push(r as isize - 1, c as isize);
        push(r as isize + 1, c as isize);
        push(r as isize, c as isize - 1);
        push(r as isize, c as isize + 1);
        op
    };
    let mut checks = Vec::new();
    let mut check_coords = Vec::new();
    for r in (0..span).step_by(2) {
        for c in (1..span).step_by(2) {
            checks.push(star_or_plaq(r, c, PauliKind::Z));
            check_coords.push((r as i32, c as i32));
        }
    }
    for r in (1..span).step_by(2) {
        for c in (0..span).step_by(2) {
            checks.push(star_or_plaq(r, c, PauliKind::X));
            check_coords.push((r as i32, c as i32));
        }
    }
    let zbar = (0..span).step_by(2).fold(PauliOp::identity(n), |acc, r| {
        acc.mul(&PauliOp::single(n, index[r * span], PauliKind::Z)).unwrap()
    });
    let xbar = (0..span).step_by(2).fold(PauliOp::identity(n), |acc, c| {
        acc.mul(&PauliOp::single(n, index[c], PauliKind::X)).unwrap()
    });
    let mut code = StabilizerCode::new(
        n,
        checks,
        vec![LogicalPair { x: xbar, z: zbar }],
        vec![],
        family.to_string(),
    );
    code.coords = Some(coords);
    code.check_coords = Some(check_coords);
    Ok(code)
}

/// Toric code on an L x L torus: 2L^2 qubits, k = 2. One plaquette and one
/// star are dependent and dropped from the generator list; decoders treat
/// the dropped checks as implicit boundaries of the matching graph.
fn toric(l: usize, family: &Family) -> Result<StabilizerCode, CodeError> {
    if l < 2 {
        return Err(CodeError::InvalidParameter {
            family: family.to_string(),
            msg: "L must be at least 2".into(),
        });
    }
    let span = 2 * l;
    let mut index = vec![usize::MAX; span * span];
    let mut coords = Vec::new();
    for r in 0..span {
        for c in 0..span {
            if (r + c) % 2 == 0 {
                index[r * span + c] = coords.len();
                coords.push((r as i32, c as i32));
            }
        }
    }
    let n = coords.len();
    debug_assert_eq!(n, 2 * l * l);
    let check = |r: usize, c: usize, kind: PauliKind| -> PauliOp {
        let mut op = PauliOp::identity(n);
        for (dr, dc) in [(span - 1, 0), (1, 0), (0, span - 1), (0, 1)] {
            let rr = (r + dr) % span;
            let cc = (c + dc) % span;
            op = op
                .mul(&PauliOp::single(n, index[rr * span + cc], kind))
                .unwrap();
        }
        op
    };
    let mut checks = Vec::new();
    // Plaquettes at (even, odd), stars at (odd, even); the lexicographically
    // last one of each type is the dependent one we drop.
    let mut plaquettes = Vec::new();
    let mut stars = Vec::new();
    let mut plaq_coords = Vec::new();
    let mut star_coords = Vec::new();
    for r in 0..span {
        for c in 0..span {
            if r % 2 == 0 && c % 2 == 1 {
                plaquettes.push(check(r, c, PauliKind::Z));
                plaq_coords.push((r as i32, c as i32));
            } else if r % 2 == 1 && c % 2 == 0 {
                stars.push(check(r, c, PauliKind::X));
                star_coords.push((r as i32, c as i32));
            }
        }
    }
    let closing = vec![
        (plaquettes.pop().unwrap(), plaq_coords.pop().unwrap()),
        (stars.pop().unwrap(), star_coords.pop().unwrap()),
    ];
    checks.extend(plaquettes);
    checks.extend(stars);
    let mut check_coords = plaq_coords;
    check_coords.extend(star_coords);

    let z_col = (0..span).step_by(2).fold(PauliOp::identity(n), |acc, r| {
        acc.mul(&PauliOp::single(n, index[r * span], PauliKind::Z)).unwrap()
    });
    let x_row = (0..span).step_by(2).fold(PauliOp::identity(n), |acc, c| {
        acc.mul(&PauliOp::single(n, index[c], PauliKind::X)).unwrap()
    });
    let z_row = (1..span).step_by(2).fold(PauliOp::identity(n), |acc, c| {
        acc.mul(&PauliOp::single(n, index[span + c], PauliKind::Z)).unwrap()
    });
    let x_col = (1..span).step_by(2).fold(PauliOp::identity(n), |acc, r| {
        acc.mul(&PauliOp::single(n, index[r * span + 1], PauliKind::X)).unwrap()
    });
    let mut code = StabilizerCode::new(
        n,
        checks,
        vec![
            LogicalPair { x: x_row, z: z_col },
            LogicalPair { x: x_col, z: z_row },
        ],
        vec![],
        family.to_string(),
    );
    code.coords = Some(coords);
    code.check_coords = Some(check_coords);
    code.closing_checks = closing;
    Ok(code)
}

/// [[n^2, 1, n]] Bacon-Shor code: qubits in an n x n array (row i, column
/// j -> index i*n + j). Gauge group: vertical XX links and horizontal ZZ
/// links; stabilizers: double Z-columns and double X-rows.
fn bacon_shor(n_side: usize, family: &Family) -> Result<StabilizerCode, CodeError> {
    if n_side < 2 {
        return Err(CodeError::InvalidParameter {
            family: family.to_string(),
            msg: "n must be at least 2".into(),
        });
    }
    let n = n_side * n_side;
    let at = |i: usize, j: usize| i * n_side + j;
    let mut checks = Vec::new();
    // Double Z-columns Z_{||,i} over columns i, i+1.
    for col in 0..n_side - 1 {
        let mut op = PauliOp::identity(n);
        for row in 0..n_side {
            for c in [col, col + 1] {
                op = op.mul(&PauliOp::single(n, at(row, c), PauliKind::Z)).unwrap();
            }
        }
        checks.push(op);
    }
    // Double X-rows X_{=,j} over rows j, j+1.
    for row in 0..n_side - 1 {
        let mut op = PauliOp::identity(n);
        for r in [row, row + 1] {
            for col in 0..n_side {
                op = op.mul(&PauliOp::single(n, at(r, col), PauliKind::X)).unwrap();
            }
        }
        checks.push(op);
    }
    let mut gauge = Vec::new();
    for col in 0..n_side {
        for row in 0..n_side - 1 {
            gauge.push(
                PauliOp::single(n, at(row, col), PauliKind::X)
                    .mul(&PauliOp::single(n, at(row + 1, col), PauliKind::X))
                    .unwrap(),
            );
        }
    }
    for row in 0..n_side {
        for col in 0..n_side - 1 {
            gauge.push(
                PauliOp::single(n, at(row, col), PauliKind::Z)
                    .mul(&PauliOp::single(n, at(row, col + 1), PauliKind::Z))
                    .unwrap(),
            );
        }
    }
    let xbar = (0..n_side).fold(PauliOp::identity(n), |acc, col| {
        acc.mul(&PauliOp::single(n, at(0, col), PauliKind::X)).unwrap()
    });
    let zbar = (0..n_side).fold(PauliOp::identity(n), |acc, row| {
        acc.mul(&PauliOp::single(n, at(row, 0), PauliKind::Z)).unwrap()
    });
    let mut code = StabilizerCode::new(
        n,
        checks,
        vec![LogicalPair { x: xbar, z: zbar }],
        gauge,
        family.to_string(),
    );
    code.coords = Some(
        (0..n)
            .map(|q| ((q / n_side) as i32, (q % n_side) as i32))
            .collect(),
    );
    let mut check_coords: Vec<(i32, i32)> = (0..n_side as i32 - 1).map(|i| (0, i)).collect();
    check_coords.extend((0..n_side as i32 - 1).map(|j| (j, 0)));
    code.check_coords = Some(check_coords);
    Ok(code)
}

/// Subsystem surface code on an L x L lattice of square plaquettes: qubits
/// on vertices and edges (3L^2 + 4L + 1 total), weight-3 triangle gauge
/// operators (weight-2 at the boundary), weight-6 plaquette stabilizers
/// (weight-2 at the boundary), k = 1 logical + L^2 gauge qubits. The
/// measured distance of this boundary realization is L + 1 (exact search);
/// the distance-3 member is L = 2 with 21 qubits.
fn subsystem_surface(l: usize, family: &Family) -> Result<StabilizerCode, CodeError> {
    if l < 2 {
        return Err(CodeError::InvalidParameter {
            family: family.to_string(),
            msg: "L must be at least 2".into(),
        });
    }
    let v_count = (l + 1) * (l + 1);
    let h_count = (l + 1) * l;
    let n = 3 * l * l + 4 * l + 1;
    // Vertex (i, j); horizontal edge h(i, j) from (i, j) to (i, j+1);
    // vertical edge v(i, j) from (i, j) to (i+1, j).
    let vertex = |i: usize, j: usize| i * (l + 1) + j;
    let h_edge = |i: usize, j: usize| v_count + i * l + j;
    let v_edge = |i: usize, j: usize| v_count + h_count + i * (l + 1) + j;

    let op = |kind: PauliKind, qubits: &[usize]| -> PauliOp {
        qubits.iter().fold(PauliOp::identity(n), |acc, &q| {
            acc.mul(&PauliOp::single(n, q, kind)).unwrap()
        })
    };

    let mut gauge = Vec::new();
    for i in 0..l {
        for j in 0..l {
            // Upper-left and bottom-right X triangles; top-right and
            // bottom-left Z triangles.
            gauge.push(op(PauliKind::X, &[h_edge(i, j), v_edge(i, j), vertex(i, j)]));
            gauge.push(op(
                PauliKind::X,
                &[v_edge(i, j + 1), h_edge(i + 1, j), vertex(i + 1, j + 1)],
            ));
            gauge.push(op(
                PauliKind::Z,
                &[h_edge(i, j), v_edge(i, j + 1), vertex(i, j + 1)],
            ));
            gauge.push(op(PauliKind::Z, &[v_edge(i, j), h_edge(i + 1, j), vertex(i + 1, j)]));
        }
    }
    // Cut-off weight-2 boundary operators: Z pairs on the rough north/south
    // rows, X pairs on the smooth west/east columns.
    for j in 0..l {
        gauge.push(op(PauliKind::Z, &[vertex(0, j), h_edge(0, j)]));
        gauge.push(op(PauliKind::Z, &[h_edge(l, j), vertex(l, j + 1)]));
    }
    for i in 0..l {
        gauge.push(op(PauliKind::X, &[v_edge(i, 0), vertex(i + 1, 0)]));
        gauge.push(op(PauliKind::X, &[vertex(i, l), v_edge(i, l)]));
    }

    // Stabilizers: weight-6 plaquettes (the two same-type triangles of each
    // plaquette multiplied) plus the weight-2 boundary operators.
    let mut checks = Vec::new();
    let mut check_coords = Vec::new();
    for i in 0..l {
        for j in 0..l {
            checks.push(op(
                PauliKind::Z,
                &[
                    h_edge(i, j),
                    v_edge(i, j + 1),
                    vertex(i, j + 1),
                    v_edge(i, j),
                    h_edge(i + 1, j),
                    vertex(i + 1, j),
                ],
            ));
            check_coords.push(((2 * i + 1) as i32, (2 * j + 1) as i32));
        }
    }
    for j in 0..l {
        checks.push(op(PauliKind::Z, &[vertex(0, j), h_edge(0, j)]));
        check_coords.push((0, (2 * j) as i32));
        checks.push(op(PauliKind::Z, &[h_edge(l, j), vertex(l, j + 1)]));
        check_coords.push(((2 * l) as i32, (2 * j + 2) as i32));
    }
    for i in 0..l {
        for j in 0..l {
            checks.push(op(
                PauliKind::X,
                &[
                    h_edge(i, j),
                    v_edge(i, j),
                    vertex(i, j),
                    v_edge(i, j + 1),
                    h_edge(i + 1, j),
                    vertex(i + 1, j + 1),
                ],
            ));
            check_coords.push(((2 * i + 1) as i32, (2 * j + 1) as i32));
        }
    }
    for i in 0..l {
        checks.push(op(PauliKind::X, &[v_edge(i, 0), vertex(i + 1, 0)]));
        check_coords.push(((2 * i + 2) as i32, 0));
        checks.push(op(PauliKind::X, &[vertex(i, l), v_edge(i, l)]));
        check_coords.push(((2 * i) as i32, (2 * l) as i32));
    }

    let logicals = complete_logicals(n, &checks, &gauge);
    if logicals.len() != 1 {
        return Err(CodeError::Construction(format!(
            "subsystem surface L={l}: expected 1 logical qubit, got {}",
            logicals.len()
        )));
    }
    let mut code = StabilizerCode::new(n, checks, logicals, gauge, family.to_string());
    code.check_coords = Some(check_coords);
    // Coordinates on the doubled grid so vertices and edge midpoints are
    // distinct integer points.
    let mut coords = vec![(0i32, 0i32); n];
    for i in 0..=l {
        for j in 0..=l {
            coords[vertex(i, j)] = ((2 * i) as i32, (2 * j) as i32);
        }
    }
    for i in 0..=l {
        for j in 0..l {
            coords[h_edge(i, j)] = ((2 * i) as i32, (2 * j + 1) as i32);
        }
    }
    for i in 0..l {
        for j in 0..=l {
            coords[v_edge(i, j)] = ((2 * i + 1) as i32, (2 * j) as i32);
        }
    }
    code.coords = Some(coords);
    let _ = derive_center(code.gauge_gens()); // sanity: center is well-defined
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_builds_and_validates() {
        for family in catalogue() {
            let code = build_named_code(&family).expect("build");
            let report = code.validate();
            assert!(report.passed(), "{family}: {report}");
        }
    }

    #[test]
    fn shor9_layout() {
        let code = build_named_code(&Family::Shor9).unwrap();
        assert_eq!((code.n(), code.k()), (9, 1));
        let rows: Vec<String> = code.stabilizer_gens().iter().map(|s| s.to_string()).collect();
        assert_eq!(
            rows,
            vec![
                "ZZIIIIIII",
                "IZZIIIIII",
                "IIIZZIIII",
                "IIIIZZIII",
                "IIIIIIZZI",
                "IIIIIIIZZ",
                "XXXXXXIII",
                "IIIXXXXXX",
            ]
        );
        assert_eq!(code.logicals()[0].x.to_string(), "XXXIIIIII");
        assert_eq!(code.logicals()[0].z.to_string(), "ZIIZIIZII");
    }

    #[test]
    fn parameter_counts() {
        for l in 2..=4 {
            let s = build_named_code(&Family::Surface { l }).unwrap();
            assert_eq!(s.n(), l * l + (l - 1) * (l - 1));
            assert_eq!(s.k(), 1);
            let t = build_named_code(&Family::Toric { l }).unwrap();
            assert_eq!(t.n(), 2 * l * l);
            assert_eq!(t.k(), 2);
        }
        for l in 2..=3 {
            let ss = build_named_code(&Family::SubsystemSurface { l }).unwrap();
            assert_eq!(ss.n(), 3 * l * l + 4 * l + 1);
            assert_eq!(ss.k(), 1);
            assert_eq!(ss.stabilizer_gens().len(), 2 * l * l + 4 * l);
            assert_eq!(ss.gauge_qubit_count(), l * l);
        }
    }

    #[test]
    fn surface_3_is_13_1() {
        let code = build_named_code(&Family::Surface { l: 3 }).unwrap();
        assert_eq!((code.n(), code.k()), (13, 1));
        assert_eq!(code.stabilizer_gens().len(), 12);
    }

    #[test]
    fn subsystem_surface_3_parameters() {
        let code = build_named_code(&Family::SubsystemSurface { l: 3 }).unwrap();
        // 3L^2 + 4L + 1 qubits; the counting identity (30 stabilizers + 9
        // gauge qubits + 1 logical) pins the same total.
        assert_eq!(code.n(), 40);
        assert_eq!(code.n(), 3 * 9 + 4 * 3 + 1);
        // Triangles weight <= 3, stabilizers weight <= 6.
        assert!(code.gauge_gens().iter().all(|g| g.weight() <= 3));
        assert!(code.stabilizer_gens().iter().all(|s| s.weight() <= 6));
    }

    #[test]
    fn bacon_shor_structure() {
        let code = build_named_code(&Family::BaconShor { n: 3 }).unwrap();
        assert_eq!((code.n(), code.k()), (9, 1));
        assert_eq!(code.stabilizer_gens().len(), 4);
        assert_eq!(code.gauge_qubit_count(), 4);
        // Center of the link group is spanned by the double rows/columns.
        let center = derive_center(code.gauge_gens());
        let space = crate::gf2::RowSpace::from_rows(
            18,
            center
                .iter()
                .map(|c| c.symplectic_row())
                .collect::<Vec<_>>()
                .iter(),
        );
        for s in code.stabilizer_gens() {
            assert!(space.contains(&s.symplectic_row()));
        }
    }

    #[test]
    fn small_code_distances() {
        use crate::codes::Distance;
        let cases = [
            (Family::TwoQubit, 1),
            (Family::C4, 2),
            (Family::C6, 2),
            (Family::Shor9, 3),
            (Family::Steane7, 3),
            (Family::FiveOneThree, 3),
            (Family::Surface { l: 2 }, 2),
            (Family::Surface { l: 3 }, 3),
            (Family::Toric { l: 2 }, 2),
            (Family::BaconShor { n: 2 }, 2),
            (Family::BaconShor { n: 3 }, 3),
            (Family::SubsystemSurface { l: 2 }, 3),
        ];
        for (family, want) in cases {
            let code = build_named_code(&family).unwrap();
            assert_eq!(code.distance(want + 1), Distance::Exact(want), "{family}");
        }
        let rep = build_named_code(&Family::RepetitionZ { n: 3 }).unwrap();
        // Z_1 is a weight-1 logical: the repetition code has quantum d = 1.
        assert_eq!(rep.distance(3), Distance::Exact(1));
        let c6 = build_named_code(&Family::C6).unwrap();
        assert_eq!(c6.distance(1), Distance::GreaterThan(1));
    }

    #[test]
    fn invalid_parameters() {
        assert!(build_named_code(&Family::Surface { l: 1 }).is_err());
        assert!(build_named_code(&Family::RepetitionZ { n: 1 }).is_err());
        assert!(matches!(
            Family::parse("nope", None, None),
            Err(CodeError::UnknownFamily(_))
        ));
        assert!(Family::parse("surface", None, None).is_err());
    }
}
