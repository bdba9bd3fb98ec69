//! Finite Abelian groups addressed by a dense element index.
//!
//! A [`Group`] is either a direct product of cyclic factors, with elements
//! encoded in mixed radix (first factor least significant), or the quotient of
//! another group by a subgroup, with elements labelled by their canonical coset
//! representatives in increasing order. Both kinds expose the same arithmetic.

mod quotient;
mod subgroup;

pub use quotient::{preimage, quotient, QuotientMap};
pub use subgroup::{
    all_subgroups, all_subgroups_with_limit, cyclic_subgroup, doubling_subgroups, is_subgroup,
    Subgroup, DEFAULT_SUBGROUP_LIMIT,
};

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Groups up to this order carry a precomputed addition table.
const ADD_TABLE_LIMIT: usize = 512;

/// An element of some group, identified by its dense index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone)]
pub struct Group {
    inner: Arc<Inner>,
}

struct Inner {
    kind: Kind,
    order: usize,
    label: String,
    neg: Vec<u32>,
    add: Option<Vec<u16>>,
    doubling: OnceLock<DoublingData>,
}

enum Kind {
    Product {
        orders: Vec<u32>,
    },
    Quotient {
        source: Group,
        forward: Arc<Vec<u32>>,
        section: Arc<Vec<u32>>,
    },
}

/// Cached facts about the doubling map `x -> 2x`.
pub(crate) struct DoublingData {
    /// `|K(G)|`, the number of solutions of `2x = 0`.
    pub kernel_size: usize,
    /// Label of the coset of `2G` containing each element, numbered by first appearance.
    pub class_of: Vec<u32>,
    pub class_count: usize,
}

impl Group {
    /// Direct product of cyclic groups of the given orders, in the given order.
    pub fn new(orders: &[u32]) -> Result<Group> {
        if let Some(bad) = orders.iter().find(|&&o| o == 0) {
            return Err(invalid!("cyclic factor order must be at least 1, got {bad}"));
        }
        let order = orders
            .iter()
            .try_fold(1usize, |acc, &o| acc.checked_mul(o as usize))
            .filter(|&n| n <= u32::MAX as usize)
            .ok_or_else(|| Error::ResourceLimit("group order overflows".into()))?;
        let label = presentation(orders);
        let kind = Kind::Product { orders: orders.to_vec() };
        let mut neg = Vec::with_capacity(order);
        for i in 0..order {
            neg.push(product_neg(orders, i) as u32);
        }
        Ok(Group::finish(kind, order, label, neg))
    }

    /// Cyclic group `Z/n`.
    pub fn cyclic(n: u32) -> Result<Group> {
        Group::new(&[n])
    }

    pub(crate) fn new_quotient(
        source: &Group,
        forward: Vec<u32>,
        section: Vec<u32>,
        label: String,
    ) -> Group {
        let order = section.len();
        let mut neg = Vec::with_capacity(order);
        for &rep in &section {
            neg.push(forward[source.neg(Elem(rep)).index()]);
        }
        let kind = Kind::Quotient {
            source: source.clone(),
            forward: Arc::new(forward),
            section: Arc::new(section),
        };
        Group::finish(kind, order, label, neg)
    }

    fn finish(kind: Kind, order: usize, label: String, neg: Vec<u32>) -> Group {
        let mut inner = Inner {
            kind,
            order,
            label,
            neg,
            add: None,
            doubling: OnceLock::new(),
        };
        if order <= ADD_TABLE_LIMIT {
            let mut table = Vec::with_capacity(order * order);
            for x in 0..order {
                for y in 0..order {
                    table.push(raw_add(&inner.kind, x, y) as u16);
                }
            }
            inner.add = Some(table);
        }
        Group { inner: Arc::new(inner) }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.inner.order
    }

    /// Presentation string, e.g. `Z4xZ2`; quotients render as `source/<gens>`.
    pub fn label(&self) -> &str {
        &self.inner.label
    }

    /// Cyclic factor orders for product groups; `None` for quotients.
    pub fn factor_orders(&self) -> Option<&[u32]> {
        match &self.inner.kind {
            Kind::Product { orders } => Some(orders),
            Kind::Quotient { .. } => None,
        }
    }

    pub fn is_quotient(&self) -> bool {
        matches!(self.inner.kind, Kind::Quotient { .. })
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order() as u32).map(Elem)
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn contains(&self, x: Elem) -> bool {
        x.index() < self.order()
    }

    /// Checked element constructor from a dense index.
    pub fn elem(&self, index: usize) -> Result<Elem> {
        if index < self.order() {
            Ok(Elem(index as u32))
        } else {
            Err(invalid!("element index {index} out of range for {} of order {}", self.label(), self.order()))
        }
    }

    /// Mixed-radix encoding of a coordinate vector (product groups only).
    pub fn encode(&self, coords: &[i64]) -> Result<Elem> {
        let orders = self
            .factor_orders()
            .ok_or_else(|| invalid!("coordinates are not defined for quotient group {}", self.label()))?;
        if coords.len() != orders.len() {
            return Err(invalid!(
                "expected {} coordinates for {}, got {}",
                orders.len(),
                self.label(),
                coords.len()
            ));
        }
        let mut index = 0usize;
        for (&c, &o) in coords.iter().zip(orders).rev() {
            index = index * o as usize + c.rem_euclid(o as i64) as usize;
        }
        Ok(Elem(index as u32))
    }

    /// Coordinates of `x` in a product group; for quotients, the coordinates of its representative.
    pub fn decode(&self, x: Elem) -> Vec<u32> {
        match &self.inner.kind {
            Kind::Product { orders } => decode(orders, x.index()),
            Kind::Quotient { source, section, .. } => source.decode(Elem(section[x.index()])),
        }
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        match &self.inner.add {
            Some(t) => Elem(t[x.index() * self.inner.order + y.index()] as u32),
            None => Elem(raw_add(&self.inner.kind, x.index(), y.index()) as u32),
        }
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        Elem(self.inner.neg[x.index()])
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn double(&self, x: Elem) -> Elem {
        self.add(x, x)
    }

    /// Checked addition: both operands must lie in this group.
    pub fn try_add(&self, x: Elem, y: Elem) -> Result<Elem> {
        for e in [x, y] {
            if !self.contains(e) {
                return Err(invalid!("element {e} does not belong to {}", self.label()));
            }
        }
        Ok(self.add(x, y))
    }

    /// The `t`-fold sum of `x`; negative `t` scales the negation.
    pub fn scale(&self, t: i64, x: Elem) -> Elem {
        match &self.inner.kind {
            Kind::Product { orders } => {
                let coords = decode(orders, x.index());
                let mut index = 0usize;
                for (&c, &o) in coords.iter().zip(orders).rev() {
                    let o = i128::from(o);
                    let v = (i128::from(t).rem_euclid(o) * i128::from(c)).rem_euclid(o);
                    index = index * o as usize + v as usize;
                }
                Elem(index as u32)
            }
            Kind::Quotient { .. } => {
                let mut n = t.rem_euclid(self.order() as i64) as u64;
                let mut acc = Elem::ZERO;
                let mut base = x;
                while n > 0 {
                    if n & 1 == 1 {
                        acc = self.add(acc, base);
                    }
                    base = self.double(base);
                    n >>= 1;
                }
                acc
            }
        }
    }

    /// Order of the element `x`.
    pub fn element_order(&self, x: Elem) -> usize {
        let mut n = 1;
        let mut y = x;
        while y != Elem::ZERO {
            y = self.add(y, x);
            n += 1;
        }
        n
    }

    /// Human-readable element: the index for cyclic groups, a coordinate tuple otherwise.
    pub fn display_elem(&self, x: Elem) -> String {
        match self.factor_orders() {
            Some(o) if o.len() <= 1 => x.to_string(),
            _ => {
                let c = self.decode(x);
                let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                format!("({})", parts.join(","))
            }
        }
    }

    pub(crate) fn doubling(&self) -> &DoublingData {
        self.inner.doubling.get_or_init(|| {
            let n = self.order();
            let mut is_double = vec![false; n];
            let mut kernel_size = 0;
            for x in self.elements() {
                let d = self.double(x);
                is_double[d.index()] = true;
                if d == Elem::ZERO {
                    kernel_size += 1;
                }
            }
            // coset labels of 2G: x and y share a class iff x - y is a double
            let mut class_of = vec![u32::MAX; n];
            let doubles: Vec<Elem> = self.elements().filter(|e| is_double[e.index()]).collect();
            let mut class_count = 0u32;
            for x in self.elements() {
                if class_of[x.index()] != u32::MAX {
                    continue;
                }
                for &d in &doubles {
                    class_of[self.add(x, d).index()] = class_count;
                }
                class_count += 1;
            }
            DoublingData {
                kernel_size,
                class_of,
                class_count: class_count as usize,
            }
        })
    }

    pub(crate) fn quotient_parts(&self) -> Option<(&Group, &[u32], &[u32])> {
        match &self.inner.kind {
            Kind::Quotient { source, forward, section } => Some((source, forward, section)),
            Kind::Product { .. } => None,
        }
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Group) -> bool {
        if Arc::ptr_eq(&self.inner, &other.inner) {
            return true;
        }
        match (&self.inner.kind, &other.inner.kind) {
            (Kind::Product { orders: a }, Kind::Product { orders: b }) => a == b,
            (
                Kind::Quotient { source: s1, forward: f1, .. },
                Kind::Quotient { source: s2, forward: f2, .. },
            ) => s1 == s2 && f1 == f2,
            _ => false,
        }
    }
}

impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({}, order {})", self.label(), self.order())
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Convenience constructor mirroring the `make_group` operation.
pub fn make_group(orders: &[u32]) -> Result<Group> {
    Group::new(orders)
}

/// Parse a presentation such as `Z15`, `Z4xZ2` or `1` (the trivial group).
pub fn parse_group(text: &str) -> Result<Group> {
    Group::new(&parse_presentation(text)?)
}

pub fn parse_presentation(text: &str) -> Result<Vec<u32>> {
    let t = text.trim();
    if t.is_empty() || t == "1" || t == "0" {
        return Ok(Vec::new());
    }
    t.split(['x', 'X', '*'])
        .map(|part| {
            let p = part.trim();
            let digits = p
                .strip_prefix('Z')
                .or_else(|| p.strip_prefix('z'))
                .ok_or_else(|| Error::Parse(format!("group factor `{p}` must look like Z<n>")))?;
            let digits = digits.strip_prefix('/').unwrap_or(digits);
            digits
                .trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad cyclic order in `{p}`")))
        })
        .collect()
}

fn presentation(orders: &[u32]) -> String {
    if orders.is_empty() {
        return "1".to_string();
    }
    orders.iter().map(|o| format!("Z{o}")).collect::<Vec<_>>().join("x")
}

fn decode(orders: &[u32], mut index: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(orders.len());
    for &o in orders {
        out.push((index % o as usize) as u32);
        index /= o as usize;
    }
    out
}

fn product_neg(orders: &[u32], index: usize) -> usize {
    let mut rem = index;
    let mut out = 0usize;
    let mut stride = 1usize;
    for &o in orders {
        let o = o as usize;
        let c = rem % o;
        rem /= o;
        out += ((o - c) % o) * stride;
        stride *= o;
    }
    out
}

fn raw_add(kind: &Kind, x: usize, y: usize) -> usize {
    match kind {
        Kind::Product { orders } => {
            if orders.len() == 1 {
                let o = orders[0] as usize;
                return (x + y) % o;
            }
            let (mut rx, mut ry) = (x, y);
            let mut out = 0usize;
            let mut stride = 1usize;
            for &o in orders {
                let o = o as usize;
                let c = (rx % o + ry % o) % o;
                rx /= o;
                ry /= o;
                out += c * stride;
                stride *= o;
            }
            out
        }
        Kind::Quotient { source, forward, section } => {
            let s = source.add(Elem(section[x]), Elem(section[y]));
            forward[s.index()] as usize
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_group_orders() {
        assert_eq!(Group::new(&[15]).unwrap().order(), 15);
        assert_eq!(Group::new(&[4, 2]).unwrap().order(), 8);
        assert_eq!(Group::new(&[]).unwrap().order(), 1);
        assert_eq!(Group::new(&[1, 1]).unwrap().order(), 1);
        assert!(matches!(Group::new(&[3, 0]), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn addition_examples() {
        let g = Group::cyclic(15).unwrap();
        assert_eq!(g.add(Elem(7), Elem(11)), Elem(3));
        let h = Group::new(&[4, 2]).unwrap();
        let x = h.encode(&[3, 1]).unwrap();
        let y = h.encode(&[1, 1]).unwrap();
        assert_eq!(h.add(x, y), Elem::ZERO);
        for e in h.elements() {
            assert_eq!(h.add(e, Elem::ZERO), e);
        }
        assert!(h.try_add(Elem(8), Elem(0)).is_err());
    }

    #[test]
    fn scale_examples() {
        let g = Group::cyclic(15).unwrap();
        assert_eq!(g.scale(2, Elem(5)), Elem(10));
        assert_eq!(g.scale(-1, Elem(4)), Elem(11));
        let h = Group::new(&[4, 2]).unwrap();
        let x = h.encode(&[1, 1]).unwrap();
        assert_eq!(h.decode(h.scale(2, x)), vec![2, 0]);
    }

    #[test]
    fn codec_is_bijective() {
        let g = Group::new(&[3, 4, 2]).unwrap();
        for e in g.elements() {
            let c: Vec<i64> = g.decode(e).into_iter().map(i64::from).collect();
            assert_eq!(g.encode(&c).unwrap(), e);
        }
    }

    #[test]
    fn parse_presentations() {
        assert_eq!(parse_presentation("Z4xZ2").unwrap(), vec![4, 2]);
        assert_eq!(parse_presentation(" z30 ").unwrap(), vec![30]);
        assert_eq!(parse_presentation("1").unwrap(), Vec::<u32>::new());
        assert!(parse_presentation("Q8").is_err());
        assert_eq!(parse_group("Z4xZ2").unwrap().label(), "Z4xZ2");
    }

    #[test]
    fn large_groups_without_table_agree() {
        let g = Group::new(&[30, 20]).unwrap();
        assert!(g.inner.add.is_none());
        let x = g.encode(&[29, 7]).unwrap();
        let y = g.encode(&[3, 15]).unwrap();
        assert_eq!(g.decode(g.add(x, y)), vec![2, 2]);
        assert_eq!(g.add(x, g.neg(x)), Elem::ZERO);
    }
}
