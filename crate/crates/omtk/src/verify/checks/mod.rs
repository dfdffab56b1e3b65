//! Check catalogue, one module per identity family.

mod helpers;

mod contract;
mod dfam;
mod duality;
mod jacobi;
mod lambda;
mod omega;
mod product;
mod squares;
mod tfam;

use super::CheckDef;

pub fn catalogue() -> Vec<CheckDef> {
    let mut all = Vec::new();
    all.extend(jacobi::defs());
    all.extend(dfam::defs());
    all.extend(omega::defs());
    all.extend(tfam::defs());
    all.extend(contract::defs());
    all.extend(product::defs());
    all.extend(duality::defs());
    all.extend(lambda::defs());
    all.extend(squares::defs());
    all
}
