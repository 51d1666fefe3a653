//! Fixed parameter points used by the verification suites and the CLI
//! `verify` command. Every point has at least one bound state well below
//! threshold, and none has a level so close to threshold that a finite
//! grid could miss it.

use crate::potentials::{Kind, Params, PotentialSpec, SOLVABLE_C};

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogPoint {
    pub label: String,
    pub spec: PotentialSpec,
}

fn point(kind: Kind, params: Params, q: f64) -> CatalogPoint {
    let spec = PotentialSpec::natural(kind, params, q).expect("catalog points are valid");
    let values = kind
        .param_names()
        .iter()
        .map(|name| format!("{name}={}", crate::potentials::FlatSpec::from(spec).get(name).unwrap_or(f64::NAN)))
        .collect::<Vec<_>>()
        .join(",");
    CatalogPoint { label: format!("{kind}[{values},q={q}]"), spec }
}

/// Catalog points for one kind. Empty for V7p and V8p, whose spectra come
/// from the grid oracle itself.
pub fn catalog(kind: Kind) -> Vec<CatalogPoint> {
    let c = SOLVABLE_C;
    match kind {
        Kind::V1 => vec![
            point(kind, Params::V1 { nu: 2.5 }, 1.0),
            point(kind, Params::V1 { nu: 3.2 }, 1.7),
            point(kind, Params::V1 { nu: 4.0 }, 0.5),
        ],
        Kind::V2 => vec![
            point(kind, Params::V2 { eta: 1.5, nu: 5.5 }, 1.0),
            point(kind, Params::V2 { eta: 0.5, nu: 3.5 }, 1.0),
            point(kind, Params::V2 { eta: 1.5, nu: 5.5 }, 2.0),
        ],
        Kind::V3 => vec![
            point(kind, Params::V3 { alpha: 20.0, lambda: 1.5 }, 1.0),
            point(kind, Params::V3 { alpha: 20.0, lambda: 1.5 }, 0.7),
            point(kind, Params::V3 { alpha: 30.0, lambda: 2.5 }, 1.5),
        ],
        Kind::V4 => vec![
            point(kind, Params::V4 { beta: 1.0, lambda: 3.5 }, 1.0),
            point(kind, Params::V4 { beta: 1.0, lambda: 3.5 }, 2.0),
            point(kind, Params::V4 { beta: 2.0, lambda: 4.5 }, 0.8),
        ],
        Kind::V5 => vec![
            point(kind, Params::V5 { v0: 0.0, v1: 60.0, v2: -29.0 }, 1.0),
            point(kind, Params::V5 { v0: 0.0, v1: 60.0, v2: -29.0 }, 2.0),
            point(kind, Params::V5 { v0: 1.0, v1: 50.0, v2: -24.0 }, 1.0),
        ],
        Kind::V6 => vec![
            point(kind, Params::V6 { v0: 0.0, v1: 2.0, v2: 5.0 }, 1.0),
            point(kind, Params::V6 { v0: 0.0, v1: 3.0, v2: 8.0 }, 1.5),
            point(kind, Params::V6 { v0: 1.0, v1: 2.0, v2: 10.0 }, 0.7),
        ],
        Kind::V7 => vec![
            point(kind, Params::V7 { a: 50.0, b: -44.0, c }, 1.0),
            point(kind, Params::V7 { a: 50.0, b: -47.0, c }, 1.0),
            point(kind, Params::V7 { a: 72.0, b: -68.0, c }, 1.0),
            point(kind, Params::V7 { a: 32.0, b: -30.0, c }, 1.0),
        ],
        Kind::V8 => vec![
            point(kind, Params::V8 { f: 5.0, h1: -1.0, c }, 1.0),
            point(kind, Params::V8 { f: 5.0, h1: 1.0, c }, 1.0),
            point(kind, Params::V8 { f: 8.0, h1: -2.0, c }, 1.0),
        ],
        Kind::V7p | Kind::V8p => Vec::new(),
    }
}

/// All catalog points, kind by kind.
pub fn full_catalog() -> Vec<CatalogPoint> {
    Kind::ALL.iter().flat_map(|&k| catalog(k)).collect()
}
