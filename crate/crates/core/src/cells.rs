//! The a-function, distinguished involutions and cells.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::coxeter::Elem;
use crate::error::{Error, Result};
use crate::hecke::{HTable, HeckeAlgebra, KlTable};
use crate::report::{ensure, Report};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AData {
    pub a: Vec<u32>,
    pub delta: Vec<u32>,
    pub nz: Vec<BigInt>,
    /// Elements `d` with `a(d) = Delta(d)`, increasing.
    pub dset: Vec<Elem>,
    pub nhat: Vec<i32>,
}

impl AData {
    pub fn in_d(&self, w: Elem) -> bool {
        self.dset.binary_search(&w).is_ok()
    }
}

/// `a(z) = max_{x,y} -(lowest exponent of h_{x,y,z})`, clamped at 0.
pub fn a_function(h: &HTable) -> Vec<u32> {
    let mut a = vec![0u32; h.size()];
    for (_, _, z, p) in h.iter() {
        if let Some(e) = p.min_exp() {
            if e < 0 {
                a[z] = a[z].max((-e) as u32);
            }
        }
    }
    a
}

/// `Delta(z)` and `n_z` from `p_{1,z} = n_z v^-Delta(z) + lower powers`.
pub fn delta_n(kl: &KlTable) -> Result<(Vec<u32>, Vec<BigInt>)> {
    let mut delta = Vec::with_capacity(kl.size());
    let mut nz = Vec::with_capacity(kl.size());
    for z in 0..kl.size() {
        let p = kl.p(0, z);
        let (e, c) = p.leading().ok_or(Error::DegenerateWeight(z))?;
        if e > 0 {
            return Err(Error::property("KL degree bound", format!("p(1,{z}) has degree {e}")));
        }
        delta.push((-e) as u32);
        nz.push(c.clone());
    }
    Ok((delta, nz))
}

/// Reachability sets of a preorder given by covering edges, as bitsets.
fn closure(n: usize, edges: &[Vec<Elem>]) -> Vec<Vec<u64>> {
    let words = n.div_ceil(64);
    (0..n)
        .map(|start| {
            let mut seen = vec![0u64; words];
            let mut stack = vec![start];
            seen[start / 64] |= 1 << (start % 64);
            while let Some(u) = stack.pop() {
                for &v in &edges[u] {
                    if seen[v / 64] >> (v % 64) & 1 == 0 {
                        seen[v / 64] |= 1 << (v % 64);
                        stack.push(v);
                    }
                }
            }
            seen
        })
        .collect()
}

fn bit(set: &[u64], i: usize) -> bool {
    set[i / 64] >> (i % 64) & 1 == 1
}

/// Cell ids numbered by first appearance in element order.
fn components(n: usize, reach: &[Vec<u64>]) -> Vec<usize> {
    let mut id = vec![usize::MAX; n];
    let mut next = 0;
    for w in 0..n {
        if id[w] != usize::MAX {
            continue;
        }
        for u in w..n {
            if bit(&reach[w], u) && bit(&reach[u], w) {
                id[u] = next;
            }
        }
        next += 1;
    }
    id
}

#[derive(Debug, Clone)]
pub struct CellPartition {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub two_sided: Vec<usize>,
    // below_left[y] holds z with z <=_L y
    below_left: Vec<Vec<u64>>,
    below_lr: Vec<Vec<u64>>,
}

impl CellPartition {
    /// `z <=_L y` is generated by `h_{x,y,z} != 0`; `<=_LR` additionally by
    /// `h_{y,x,z} != 0`.
    pub fn build(h: &HTable) -> Self {
        let n = h.size();
        let mut left_edges = vec![Vec::new(); n];
        let mut lr_edges = vec![Vec::new(); n];
        for (x, y, z, _) in h.iter() {
            left_edges[y].push(z);
            lr_edges[y].push(z);
            lr_edges[x].push(z);
        }
        for e in left_edges.iter_mut().chain(lr_edges.iter_mut()) {
            e.sort_unstable();
            e.dedup();
        }
        let below_left = closure(n, &left_edges);
        let below_lr = closure(n, &lr_edges);
        let left = components(n, &below_left);
        let two_sided = components(n, &below_lr);
        Self { left, right: Vec::new(), two_sided, below_left, below_lr }
    }

    fn with_right(mut self, inverse: impl Fn(Elem) -> Elem) -> Self {
        let n = self.left.len();
        let mut map = std::collections::BTreeMap::new();
        self.right = (0..n)
            .map(|w| {
                let l = self.left[inverse(w)];
                let k = map.len();
                *map.entry(l).or_insert(k)
            })
            .collect();
        self
    }

    pub fn left_leq(&self, z: Elem, y: Elem) -> bool {
        bit(&self.below_left[y], z)
    }

    pub fn lr_leq(&self, z: Elem, y: Elem) -> bool {
        bit(&self.below_lr[y], z)
    }

    pub fn left_equiv(&self, x: Elem, y: Elem) -> bool {
        self.left[x] == self.left[y]
    }

    fn members(ids: &[usize]) -> Vec<Vec<Elem>> {
        let count = ids.iter().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); count];
        for (w, &c) in ids.iter().enumerate() {
            out[c].push(w);
        }
        out
    }

    pub fn left_cells(&self) -> Vec<Vec<Elem>> {
        Self::members(&self.left)
    }

    pub fn right_cells(&self) -> Vec<Vec<Elem>> {
        Self::members(&self.right)
    }

    pub fn two_sided_cells(&self) -> Vec<Vec<Elem>> {
        Self::members(&self.two_sided)
    }
}

/// Everything derived from the structure constants at the level of cells.
#[derive(Debug, Clone)]
pub struct CellData {
    pub adata: AData,
    pub partition: CellPartition,
}

impl CellData {
    pub fn build(alg: &HeckeAlgebra, kl: &KlTable, h: &HTable) -> Result<Self> {
        let g = alg.group();
        let a = a_function(h);
        let (delta, nz) = delta_n(kl)?;
        let dset: Vec<Elem> = g.elements().filter(|&z| a[z] == delta[z]).collect();
        let partition = CellPartition::build(h).with_right(|w| g.inverse(w));
        // nhat(z) = n_d for the d in D with d ~_L z^-1
        let nhat = g
            .elements()
            .map(|z| {
                let cell = partition.left[g.inverse(z)];
                dset.iter()
                    .find(|&&d| partition.left[d] == cell)
                    .map_or(1, |&d| if nz[d].is_negative() { -1 } else { 1 })
            })
            .collect();
        Ok(Self { adata: AData { a, delta, nz, dset, nhat }, partition })
    }

    /// The properties that only involve cells and the a-function.
    pub fn check(&self, alg: &HeckeAlgebra) -> Report {
        let g = alg.group();
        let ad = &self.adata;
        let cp = &self.partition;
        let mut r = Report::new();
        r.record(
            "P1",
            g.elements().find(|&z| ad.a[z] > ad.delta[z]).map_or(Ok(()), |z| Err(format!("a({}) > Delta", g.name(z)))),
        );
        let p4 = (|| {
            for z in g.elements() {
                for y in g.elements() {
                    if cp.lr_leq(z, y) && ad.a[z] < ad.a[y] {
                        return Err(format!("{} <=_LR {} but a drops", g.name(z), g.name(y)));
                    }
                }
            }
            Ok(())
        })();
        r.record("P4", p4);
        r.record(
            "P5 n_d = ±1",
            ad.dset
                .iter()
                .find(|&&d| ad.nz[d].abs() != BigInt::one())
                .map_or(Ok(()), |&d| Err(format!("n_{} = {}", g.name(d), ad.nz[d]))),
        );
        r.record(
            "P6",
            ad.dset
                .iter()
                .find(|&&d| g.inverse(d) != d)
                .map_or(Ok(()), |&d| Err(format!("{} is not an involution", g.name(d)))),
        );
        let p13 = cp.left_cells().iter().find(|cell| cell.iter().filter(|&&w| ad.in_d(w)).count() != 1).map_or(
            Ok(()),
            |cell| {
                Err(format!(
                    "left cell of {} has {} distinguished elements",
                    g.name(cell[0]),
                    cell.iter().filter(|&&w| ad.in_d(w)).count()
                ))
            },
        );
        r.record("P13", p13);
        r.record(
            "a(z) = a(z^-1)",
            g.elements().find(|&z| ad.a[z] != ad.a[g.inverse(z)]).map_or(Ok(()), |z| Err(g.name(z))),
        );
        r.record(
            "a(w0) = L(w0)",
            ensure(ad.a[g.longest()] as i32 == alg.weights().weight(g, g.longest()), || {
                format!("a(w0) = {}", ad.a[g.longest()])
            }),
        );
        r.record(
            "right cells are inverted left cells",
            g.elements()
                .flat_map(|x| g.elements().map(move |y| (x, y)))
                .find(|&(x, y)| (cp.right[x] == cp.right[y]) != cp.left_equiv(g.inverse(x), g.inverse(y)))
                .map_or(Ok(()), |(x, y)| Err(format!("{} {}", g.name(x), g.name(y)))),
        );
        r.record(
            "nhat constant on right cells",
            g.elements()
                .flat_map(|x| g.elements().map(move |y| (x, y)))
                .find(|&(x, y)| cp.right[x] == cp.right[y] && ad.nhat[x] != ad.nhat[y])
                .map_or(Ok(()), |(x, y)| Err(format!("{} {}", g.name(x), g.name(y)))),
        );
        r
    }
}
