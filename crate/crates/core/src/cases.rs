//! The two worked rank-2 examples and a builder for seeds with universal
//! coefficients.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::pattern::{ExchangeMatrix, GeneralizedSeed};
use crate::polyring::{RationalFunction, SeedTable};
use crate::semifield::{ExchangePolynomial, Flavor, GroupRingElement, SemifieldElement, SemifieldKind};

/// Seed with universal coefficients generated by `y1..yn` and one
/// generator `z{i}_{l}` per inner exchange coefficient (`0 < l < r_i`),
/// so that `Z_i(u) = 1 + z_i1 u + ... + u^{r_i}`.
pub fn universal_seed(b: ExchangeMatrix, r: &[usize]) -> Result<GeneralizedSeed> {
    if r.len() != b.rank() {
        return Err(Error::DegreeMismatch);
    }
    let mut gens: Vec<String> = (0..r.len()).map(|i| format!("y{}", i + 1)).collect();
    for (i, &ri) in r.iter().enumerate() {
        for l in 1..ri {
            gens.push(format!("z{}_{}", i + 1, l));
        }
    }
    let table = Arc::new(SeedTable::new(r, &gens)?);
    let kind = SemifieldKind::over_table(Flavor::Universal, &gens, &table.table)?;
    let nv = table.nvars();
    let gen = |name: &str| -> Result<SemifieldElement> {
        let v = table.table.index_of(name).unwrap();
        SemifieldElement::universal(&kind, RationalFunction::var(nv, v))
    };
    let y = (0..r.len()).map(|i| gen(&format!("y{}", i + 1))).collect::<Result<Vec<_>>>()?;
    let mut z = Vec::new();
    for (i, &ri) in r.iter().enumerate() {
        let mut coeffs = vec![GroupRingElement::one(&kind)];
        for l in 1..ri {
            coeffs.push(GroupRingElement::new(
                &kind,
                vec![(BigInt::from(1), gen(&format!("z{}_{}", i + 1, l))?)],
            )?);
        }
        coeffs.push(GroupRingElement::one(&kind));
        z.push(ExchangePolynomial::new(coeffs)?);
    }
    GeneralizedSeed::initial(table, kind, y, z, b)
}

/// Exchange matrix and degrees of case 1 or 2.
pub fn case_data(case: u32) -> Result<(ExchangeMatrix, Vec<usize>)> {
    match case {
        1 => Ok((ExchangeMatrix::new(vec![vec![0, -1], vec![1, 0]], None)?, vec![2, 1])),
        2 => Ok((ExchangeMatrix::new(vec![vec![0, 1], vec![-2, 0]], None)?, vec![2, 3])),
        _ => Err(Error::UnknownCase(case.to_string())),
    }
}

/// Initial seed of case 1 (`r = (2,1)`, `Z_1 = 1 + z u + u^2`) or case 2
/// (`r = (2,3)`, generic inner coefficients).
pub fn case_seed(case: u32) -> Result<GeneralizedSeed> {
    let (b, r) = case_data(case)?;
    universal_seed(b, &r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_seeds_validate() {
        let s = case_seed(1).unwrap();
        assert_eq!(s.degrees(), vec![2, 1]);
        assert_eq!(s.z()[0].render(s.vars()), "1 + [z1_1]*u + u^2");
        let s = case_seed(2).unwrap();
        assert_eq!(s.b().d(), &[2, 1]);
        assert_eq!(case_seed(3).unwrap_err(), Error::UnknownCase("3".into()));
    }
}
