use crate::algebra::sumset;
use crate::error::{invalid, Result};
use crate::group::Subgroup;
use crate::set::GSubset;

/// `{g : g + C = C}`.
pub fn kneser_stabilizer(c: &GSubset) -> Result<Subgroup> {
    let first = c.min().ok_or_else(|| invalid!("the stabilizer of the empty set is not used"))?;
    let g = c.group();
    // any period maps `first` into C, so candidates are C − first
    let periods = GSubset::from_elems(
        g,
        c.iter()
            .map(|x| g.sub(x, first))
            .filter(|&p| c.iter().all(|x| c.contains(g.add(x, p)))),
    );
    Subgroup::from_carrier(periods)
}

/// If `|A + B| < |A| + |B|`, checks `|A + B| = |A + H| + |B + H| − |H|` for the
/// stabilizer `H` of `A + B`; otherwise vacuously true.
pub fn kneser_check(a: &GSubset, b: &GSubset) -> Result<bool> {
    if a.is_empty() || b.is_empty() {
        return Err(invalid!("A and B must be non-empty"));
    }
    let ab = sumset(a, b)?;
    if ab.len() >= a.len() + b.len() {
        return Ok(true);
    }
    let h = kneser_stabilizer(&ab)?;
    let ah = sumset(a, h.carrier())?;
    let bh = sumset(b, h.carrier())?;
    Ok(ab.len() + h.order() == ah.len() + bh.len())
}
