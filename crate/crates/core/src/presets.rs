//! Named sublattices of L_2 = U^3 + E8(-1)^2 + <-2>.
//!
//! Basis of L_2: U blocks at (0,1), (2,3), (4,5); E8(-1) at 6..13 and 14..21;
//! the generator e of <-2> at 22.

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::sublattice::Sublattice;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub n: i64,
    /// Basis rows as (index, coefficient) pairs in L_n coordinates.
    pub rows: &'static [&'static [(usize, i64)]],
}

pub const EX_COMP: Preset = Preset {
    name: "ex-comp",
    description: "<2> + <-2> spanned by h = e1 + f1 and e",
    n: 2,
    rows: &[&[(0, 1), (1, 1)], &[(22, 1)]],
};

pub const EX_NONSEP: Preset = Preset {
    name: "ex-nonsep",
    description: "U(2) spanned by e1 + f1 and e2 + f2, with e_i, f_i from the first two copies of U",
    n: 2,
    rows: &[&[(0, 1), (2, 1)], &[(1, 1), (3, 1)]],
};

pub const EX_FOUR: Preset = Preset {
    name: "ex-four",
    description: "<2> + 3<-2> spanned by c = e1 + f1, d = e2 - f2, d' = e3 - f3 and e",
    n: 2,
    rows: &[&[(0, 1), (1, 1)], &[(2, 1), (3, -1)], &[(4, 1), (5, -1)], &[(22, 1)]],
};

pub const ALL: [Preset; 3] = [EX_COMP, EX_NONSEP, EX_FOUR];

impl Preset {
    pub fn by_name(name: &str) -> Result<Preset> {
        ALL.iter().copied().find(|p| p.name == name).ok_or_else(|| Error::Input(format!("unknown preset {name:?}; expected one of ex-comp, ex-nonsep, ex-four")))
    }

    pub fn ambient(&self) -> Result<Lattice> {
        Lattice::ln(self.n)
    }

    pub fn sublattice(&self) -> Result<Sublattice> {
        let l = self.ambient()?;
        let rows: Vec<Vec<i64>> = self
            .rows
            .iter()
            .map(|r| {
                let mut v = vec![0i64; l.rank()];
                for &(i, c) in r.iter() {
                    v[i] = c;
                }
                v
            })
            .collect();
        Sublattice::from_i64(&l, &rows)
    }
}

/// The class 2 e1 - 2 e2 + e, ambient coordinates (e1 = b0, e2 = b1).
pub fn ex_nonsep_delta() -> Vec<i64> {
    let mut v = vec![0i64; 23];
    v[0] = 2;
    v[1] = -2;
    v[22] = 1;
    v
}
