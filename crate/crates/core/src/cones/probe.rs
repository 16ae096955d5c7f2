use crate::complexes::{l_z, Complex};
use crate::error::Result;
use crate::monoidal::tensor;

use super::cone::mc1;

/// Default number of derived layers added to the seeds.
pub const DEFAULT_PROBE_DEPTH: usize = 3;

/// Targets used to test universal properties: the seeds and `K(0)`, then
/// (by depth) their suspensions both ways, their `Lℤ`-tensors, and their
/// `Mc 1` cones.
pub fn probe_family(seeds: &[Complex], depth: usize) -> Result<Vec<Complex>> {
    let mut out: Vec<Complex> = Vec::new();
    let push = |c: Complex, out: &mut Vec<Complex>| {
        if !c.is_zero() && !out.contains(&c) {
            out.push(c);
        }
    };
    push(Complex::point(0), &mut out);
    for s in seeds {
        push(s.clone(), &mut out);
    }
    let lz = l_z();
    for layer in 1..=depth.min(3) {
        for s in seeds {
            match layer {
                1 => {
                    push(s.suspend(1), &mut out);
                    push(s.suspend(-1), &mut out);
                }
                2 => push(tensor(&lz, s)?, &mut out),
                _ => push(mc1(s)?, &mut out),
            }
        }
    }
    Ok(out)
}
