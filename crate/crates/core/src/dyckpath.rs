//! Rational Dyck paths and the Gorsky-Mazin bijection with 0-normalized
//! semigroup modules, the vertex statistics kappa / v_* / v^*, and
//! rowmotion.
//!
//! Grid convention: d columns (x from 0 to d), semi-infinite rows upward,
//! and square (x, y) labeled d*y - n*(x+1). Labels decrease by n across a
//! row and increase by d up a column; the squares with labels in Delta
//! form an up-closed region whose lower boundary is the path. Every
//! nonnegative integer labels exactly one square, which makes the
//! bijection with D_{n,d} immediate.

use crate::gammamod::{fundamental_domain, Ambient, GammaModule, GermParams};
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Step {
    N,
    E,
}

/// Lattice path with n N-steps and d E-steps from (0,0) to (d,n), weakly
/// above the diagonal y = (n/d) x.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DyckPath {
    n: u32,
    d: u32,
    steps: Vec<Step>,
}

impl DyckPath {
    pub fn new(n: u32, d: u32, steps: Vec<Step>) -> Result<Self> {
        let n_count = steps.iter().filter(|s| **s == Step::N).count();
        let e_count = steps.len() - n_count;
        if n_count != n as usize || e_count != d as usize {
            return Err(Error::invalid("path must have n N-steps and d E-steps"));
        }
        let (mut x, mut y) = (0i64, 0i64);
        for s in &steps {
            match s {
                Step::N => y += 1,
                Step::E => x += 1,
            }
            // Weakly above y = (n/d) x, exactly: d*y >= n*x.
            if (d as i64) * y < (n as i64) * x {
                return Err(Error::invalid("path dips below the diagonal"));
            }
        }
        Ok(DyckPath { n, d, steps })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Vertices along the path, from (0,0) to (d,n).
    pub fn vertices(&self) -> Vec<(i64, i64)> {
        let mut out = vec![(0, 0)];
        let (mut x, mut y) = (0i64, 0i64);
        for s in &self.steps {
            match s {
                Step::N => y += 1,
                Step::E => x += 1,
            }
            out.push((x, y));
        }
        out
    }

    /// Column heights: h[x] is the path height over [x, x+1].
    pub fn heights(&self) -> Vec<i64> {
        let mut h = Vec::with_capacity(self.d as usize);
        let mut y = 0i64;
        for s in &self.steps {
            match s {
                Step::N => y += 1,
                Step::E => h.push(y),
            }
        }
        h
    }

    /// Number of full squares with nonnegative label strictly between the
    /// path and the diagonal; equals |Z>=0 \ Delta| under the bijection.
    pub fn area(&self) -> u64 {
        let n = self.n as i64;
        let d = self.d as i64;
        let mut area = 0u64;
        for (x, &h) in self.heights().iter().enumerate() {
            let x = x as i64;
            // Squares (x, y) with 0 <= label and y < h: label = d*y - n*(x+1).
            let mut y = h - 1;
            while y >= 0 && d * y - n * (x + 1) >= 0 {
                area += 1;
                y -= 1;
            }
        }
        area
    }

    /// Serializes as a string over {N, E}.
    pub fn to_step_string(&self) -> String {
        self.steps
            .iter()
            .map(|s| match s {
                Step::N => 'N',
                Step::E => 'E',
            })
            .collect()
    }

    pub fn from_step_string(n: u32, d: u32, s: &str) -> Result<Self> {
        let steps = s
            .chars()
            .map(|c| match c {
                'N' => Ok(Step::N),
                'E' => Ok(Step::E),
                other => Err(Error::parse(format!("bad step character '{other}'"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, d, steps)
    }

    /// Inner vertices (E then N corners) and outer vertices (N then E
    /// corners), each as lattice points on the path.
    pub fn vertex_sets(&self) -> (Vec<(i64, i64)>, Vec<(i64, i64)>) {
        let verts = self.vertices();
        let mut inner = Vec::new();
        let mut outer = Vec::new();
        for i in 1..self.steps.len() {
            let p = verts[i];
            match (self.steps[i - 1], self.steps[i]) {
                (Step::E, Step::N) => inner.push(p),
                (Step::N, Step::E) => outer.push(p),
                _ => {}
            }
        }
        (inner, outer)
    }

    /// kappa(p): the number of E-steps of the path whose interior meets
    /// the line of slope n/d through p. Exact rational comparison.
    pub fn kappa(&self, p: (i64, i64)) -> u64 {
        let n = self.n as i64;
        let d = self.d as i64;
        let (px, py) = p;
        let mut count = 0u64;
        let (mut x, mut y) = (0i64, 0i64);
        for s in &self.steps {
            match s {
                Step::N => y += 1,
                Step::E => {
                    // The line hits height y at x* with n*(x* - px) = d*(y - py).
                    // Interior of [x, x+1]: n*x < n*px + d*(y-py) < n*(x+1).
                    let rhs = n * px + d * (y - py);
                    if n * x < rhs && rhs < n * (x + 1) {
                        count += 1;
                    }
                    x += 1;
                }
            }
        }
        count
    }

    /// The label of the square whose bottom-right corner is the inner
    /// vertex p; under the bijection it is the generator attached to p.
    pub fn inner_vertex_label(&self, p: (i64, i64)) -> i64 {
        let n = self.n as i64;
        let d = self.d as i64;
        d * p.1 - n * p.0
    }

    /// SVG rendering of the labeled grid and the path.
    pub fn to_svg(&self) -> String {
        let n = self.n as i64;
        let d = self.d as i64;
        let cell = 40i64;
        let rows = n + 1;
        let width = d * cell + 2;
        let height = rows * cell + 2;
        let flip = |y: i64| height - 1 - y; // put the origin bottom-left
        let mut svg = String::new();
        svg.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
             font-family=\"monospace\" font-size=\"12\">\n"
        ));
        for x in 0..d {
            for y in 0..rows {
                let label = d * y - n * (x + 1);
                let px = x * cell + 1;
                let py = flip((y + 1) * cell) + 1;
                svg.push_str(&format!(
                    "<rect x=\"{px}\" y=\"{py}\" width=\"{cell}\" height=\"{cell}\" \
                     fill=\"{}\" stroke=\"#999\"/>\n",
                    if label >= 0 { "#eef6ff" } else { "#ffffff" }
                ));
                svg.push_str(&format!(
                    "<text x=\"{}\" y=\"{}\" fill=\"{}\">{label}</text>\n",
                    px + 4,
                    py + cell - 6,
                    if label >= 0 { "#1155cc" } else { "#888888" }
                ));
            }
        }
        // Diagonal and path.
        svg.push_str(&format!(
            "<line x1=\"1\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#cc4444\" stroke-dasharray=\"4\"/>\n",
            flip(0),
            d * cell + 1,
            flip(n * cell)
        ));
        let mut pts = Vec::new();
        for (x, y) in self.vertices() {
            pts.push(format!("{},{}", x * cell + 1, flip(y * cell)));
        }
        svg.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"#222222\" stroke-width=\"3\"/>\n",
            pts.join(" ")
        ));
        svg.push_str("</svg>\n");
        svg
    }
}

/// The Gorsky-Mazin bijection: the boundary path of the region of squares
/// labeled by elements of Delta. Requires coprime (n,d) and min(Delta) = 0.
pub fn to_dyck(m: &GammaModule) -> Result<DyckPath> {
    let p = m.params();
    p.require_coprime()?;
    if m.ambient() != Ambient::S {
        return Err(Error::invalid("the Dyck bijection is over the ambient S"));
    }
    if m.min_elt() != 0 {
        return Err(Error::invalid("the Dyck bijection needs min(Delta) = 0"));
    }
    let n = p.n as i64;
    let d = p.d as i64;
    let mut steps = Vec::with_capacity((p.n + p.d) as usize);
    let mut y = 0i64;
    for x in 0..d {
        // Lowest in-Delta square in this column.
        let mut h = if n * (x + 1) % d == 0 { n * (x + 1) / d } else { n * (x + 1) / d + 1 };
        while !m.contains(d * h - n * (x + 1)) {
            h += 1;
        }
        debug_assert!(h >= y, "column heights must be monotone");
        for _ in y..h {
            steps.push(Step::N);
        }
        y = h;
        steps.push(Step::E);
    }
    for _ in y..n {
        steps.push(Step::N);
    }
    DyckPath::new(p.n, p.d, steps)
}

/// Inverse bijection: reads off the module from the squares above the path.
pub fn from_dyck(path: &DyckPath) -> Result<GammaModule> {
    let p = GermParams::new(path.n, path.d)?;
    p.require_coprime()?;
    let n = path.n as i64;
    let d = path.d as i64;
    let heights = path.heights();
    let mut genvec = vec![u64::MAX; path.n as usize];
    let mut found = 0;
    // Every m >= 0 labels exactly one square; scan until all residues hit.
    let mut mval = 0i64;
    while found < path.n {
        // Square of label mval: the unique x in [0, d) with
        // d | (mval + n (x+1)); then y = (mval + n(x+1))/d.
        let mut hit = false;
        for x in 0..d {
            let s = mval + n * (x + 1);
            if s % d == 0 {
                let y = s / d;
                if y >= heights[x as usize] {
                    hit = true;
                }
                break;
            }
        }
        if hit {
            let r = (mval % n) as usize;
            if genvec[r] == u64::MAX {
                genvec[r] = mval as u64;
                found += 1;
            }
        }
        mval += 1;
        if mval > n * d + n + d {
            return Err(Error::invalid("path does not bound a Gamma-module region"));
        }
    }
    GammaModule::new(p, Ambient::S, genvec)
}

/// Rowmotion: the unique Delta' in D_{n,d} with Cogen(Delta') equal to
/// Gen(Delta) minus {0}. Solved by search over the (small) fundamental
/// domain; zero or multiple solutions are an error because either would
/// falsify the defining claim.
pub fn rowmotion(m: &GammaModule) -> Result<GammaModule> {
    let p = m.params();
    p.require_coprime()?;
    if m.min_elt() != 0 {
        return Err(Error::invalid("rowmotion is defined on D_{n,d}"));
    }
    let mut target: Vec<u64> = m.generators().into_iter().filter(|&k| k != 0).collect();
    target.sort_unstable();
    let mut found = None;
    for cand in fundamental_domain(p)? {
        if cand.cogenerators() == target {
            if found.is_some() {
                return Err(Error::invalid(
                    "rowmotion target is not unique; this falsifies the defining claim",
                ));
            }
            found = Some(cand);
        }
    }
    found.ok_or_else(|| {
        Error::invalid("no module realizes the rowmotion target cogenerator set")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn module(n: u32, d: u32, genvec: &[u64]) -> GammaModule {
        GammaModule::new(GermParams::new(n, d).unwrap(), Ambient::S, genvec.to_vec()).unwrap()
    }

    #[test]
    fn full_module_has_area_zero() {
        let m = module(2, 3, &[0, 1]);
        let path = to_dyck(&m).unwrap();
        assert_eq!(path.area(), 0);
        assert_eq!(from_dyck(&path).unwrap(), m);
    }

    #[test]
    fn ex_7x5_vertex_data() {
        // Gen_7 = {0,5,3,1,6,11,9}; the figure has |v_*| = 3, |v^*| = 4.
        let m = module(7, 5, &[0, 1, 9, 3, 11, 5, 6]);
        let path = to_dyck(&m).unwrap();
        assert_eq!(path.area(), m.codim());
        let (inner, outer) = path.vertex_sets();
        assert_eq!(inner.len(), 3);
        assert_eq!(outer.len(), 4);
        // Inner vertices realize Gen(Delta) \ {0} via the square labels.
        let mut labels: Vec<i64> = inner.iter().map(|&p| path.inner_vertex_label(p)).collect();
        labels.sort_unstable();
        assert_eq!(labels, vec![1, 3, 9]);
        // kappa at inner vertices equals the xi-counts of their generators.
        for &p in &inner {
            let k = path.inner_vertex_label(p) as u64;
            assert_eq!(path.kappa(p), m.xi_count(k).unwrap());
        }
    }

    #[test]
    fn ex_7x5_tau_sequence() {
        let m = module(7, 5, &[0, 1, 9, 3, 11, 5, 6]);
        let path = to_dyck(&m).unwrap();
        let (inner, outer) = path.vertex_sets();
        // Order all corners by decreasing distance from the diagonal
        // (|n x - d y| is a valid exact proxy).
        let mut all: Vec<((i64, i64), bool)> = inner
            .iter()
            .map(|&p| (p, true))
            .chain(outer.iter().map(|&p| (p, false)))
            .collect();
        all.sort_by_key(|&((x, y), _)| -((7 * x - 5 * y).abs()));
        // Coprimality: all distances distinct.
        let dists: Vec<i64> = all.iter().map(|&((x, y), _)| (7 * x - 5 * y).abs()).collect();
        let mut uniq = dists.clone();
        uniq.dedup();
        assert_eq!(dists.len(), uniq.len());
        // Farthest is outer with kappa = 0.
        let (p0, p0_inner) = all[0];
        assert!(!p0_inner);
        assert_eq!(path.kappa(p0), 0);
        let taus: Vec<u64> = all[1..].iter().map(|&(p, _)| path.kappa(p)).collect();
        assert_eq!(taus, vec![1, 2, 2, 2, 2, 1]);
    }

    #[test]
    fn no_inner_vertices_row() {
        // (3,4) Delta_{0,4,8}: Gen \ {0} is empty, so v_* is empty.
        let m = module(3, 4, &[0, 4, 8]);
        let path = to_dyck(&m).unwrap();
        let (inner, outer) = path.vertex_sets();
        assert!(inner.is_empty());
        assert_eq!(outer.len(), 1);
    }

    #[test]
    fn small_full_path_vertices() {
        // (2,3) full module: one inner vertex (generator 1), two outer.
        let m = module(2, 3, &[0, 1]);
        let path = to_dyck(&m).unwrap();
        let (inner, outer) = path.vertex_sets();
        assert_eq!(inner.len(), 1);
        assert_eq!(outer.len(), 2);
        assert_eq!(path.inner_vertex_label(inner[0]), 1);
    }

    #[test]
    fn roundtrip_all_of_d34() {
        let p = GermParams::new(3, 4).unwrap();
        let domain = fundamental_domain(p).unwrap();
        assert_eq!(domain.len(), 5);
        for m in &domain {
            let path = to_dyck(m).unwrap();
            assert_eq!(&from_dyck(&path).unwrap(), m);
            assert_eq!(path.area(), m.codim());
        }
    }

    #[test]
    fn updown_product_identity() {
        // The kappa multiset over v_* equals the multiset over v^* minus
        // its farthest element, for every coprime pair with n + d <= 13.
        for n in 2u32..=11 {
            for d in 2u32..=11 {
                if n + d > 13 || num::integer::gcd(n, d) != 1 {
                    continue;
                }
                let p = GermParams::new(n, d).unwrap();
                for m in fundamental_domain(p).unwrap() {
                    let path = to_dyck(&m).unwrap();
                    let (inner, outer) = path.vertex_sets();
                    assert_eq!(outer.len(), inner.len() + 1);
                    let far = outer
                        .iter()
                        .copied()
                        .max_by_key(|&(x, y)| (n as i64 * x - d as i64 * y).abs())
                        .unwrap();
                    assert_eq!(path.kappa(far), 0);
                    let mut k_in: Vec<u64> = inner.iter().map(|&q| path.kappa(q)).collect();
                    let mut k_out: Vec<u64> = outer
                        .iter()
                        .filter(|&&q| q != far)
                        .map(|&q| path.kappa(q))
                        .collect();
                    k_in.sort_unstable();
                    k_out.sort_unstable();
                    assert_eq!(k_in, k_out, "updown fails at (n,d)=({n},{d})");
                }
            }
        }
    }

    #[test]
    fn rowmotion_examples_and_bijectivity() {
        // (3,4): Row(Delta_{0,1,2}) has Cogen = {1,2}, which is Delta with
        // genvec [0,4,5]; Row(Delta_{0,4,8}) = Delta_{0,1,2}.
        let m = module(3, 4, &[0, 1, 2]);
        assert_eq!(rowmotion(&m).unwrap(), module(3, 4, &[0, 4, 5]));
        let m = module(3, 4, &[0, 4, 8]);
        assert_eq!(rowmotion(&m).unwrap(), module(3, 4, &[0, 1, 2]));

        for (n, d) in [(2u32, 3u32), (3, 4), (2, 5), (3, 5), (4, 5)] {
            let p = GermParams::new(n, d).unwrap();
            let domain = fundamental_domain(p).unwrap();
            let mut images: Vec<GammaModule> =
                domain.iter().map(|m| rowmotion(m).unwrap()).collect();
            images.sort();
            images.dedup();
            assert_eq!(images.len(), domain.len(), "rowmotion not bijective");
        }
    }

    #[test]
    fn svg_smoke() {
        let m = module(2, 3, &[0, 1]);
        let svg = to_dyck(&m).unwrap().to_svg();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("polyline"));
    }

    #[test]
    fn step_string_roundtrip() {
        let m = module(3, 4, &[0, 4, 5]);
        let path = to_dyck(&m).unwrap();
        let s = path.to_step_string();
        assert_eq!(DyckPath::from_step_string(3, 4, &s).unwrap(), path);
    }
}
