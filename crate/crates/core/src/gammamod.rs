//! Numerical-semigroup modules for Gamma = <n, d>: enumeration of the
//! torus-fixed points of Quot/Hilb, generators, cogenerators, syzygies,
//! and the affine-cell dimension formulas.
//!
//! A module Delta is a cofinite subset of Gamma(E) stable under +n and +d,
//! represented by its n-generator vector: one minimal element per residue
//! class mod n. Membership is O(1) and the codimension is a closed form.

use crate::{Error, Result};

/// Parameters of the germ y^n = x^d.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GermParams {
    pub n: u32,
    pub d: u32,
}

impl GermParams {
    pub fn new(n: u32, d: u32) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::invalid("n and d must be positive"));
        }
        Ok(GermParams { n, d })
    }

    pub fn gcd(&self) -> u32 {
        num::integer::gcd(self.n, self.d)
    }

    /// Number of branches b = gcd(n, d).
    pub fn branches(&self) -> u32 {
        self.gcd()
    }

    /// Writhe of the torus braid, e = (n-1) d.
    pub fn writhe(&self) -> u64 {
        (self.n as u64 - 1) * self.d as u64
    }

    /// Delta invariant (nd - n - d + gcd)/2.
    pub fn delta(&self) -> u64 {
        let n = self.n as u64;
        let d = self.d as u64;
        (n * d - n - d + self.gcd() as u64) / 2
    }

    pub fn is_coprime(&self) -> bool {
        self.gcd() == 1
    }

    pub fn require_coprime(&self) -> Result<()> {
        if self.is_coprime() {
            Ok(())
        } else {
            Err(Error::NonCoprime { n: self.n, d: self.d })
        }
    }
}

/// Ambient module: the normalization S (Gamma = Z>=0) or the ring R
/// (Gamma = nZ>=0 + dZ>=0).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Ambient {
    S,
    R,
}

impl Ambient {
    pub fn as_str(self) -> &'static str {
        match self {
            Ambient::S => "S",
            Ambient::R => "R",
        }
    }

    /// minvec[i] = least element of Gamma(E) congruent to i mod n.
    pub fn minvec(self, p: GermParams) -> Result<Vec<u64>> {
        let n = p.n as u64;
        match self {
            Ambient::S => Ok((0..n).collect()),
            Ambient::R => {
                p.require_coprime()?;
                let d = p.d as u64;
                let mut v = vec![u64::MAX; n as usize];
                for j in 0..n {
                    let val = j * d;
                    let r = (val % n) as usize;
                    v[r] = v[r].min(val);
                }
                Ok(v)
            }
        }
    }
}

/// A Gamma-module Delta, stored by its n-generator vector: genvec[i] is
/// the least element of Delta congruent to i mod n.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct GammaModule {
    n: u32,
    d: u32,
    ambient: AmbientTag,
    genvec: Vec<u64>,
}

// Ambient stored as a plain tag so GammaModule derives Ord for stable
// enumeration order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
enum AmbientTag {
    S,
    R,
}

impl From<Ambient> for AmbientTag {
    fn from(a: Ambient) -> Self {
        match a {
            Ambient::S => AmbientTag::S,
            Ambient::R => AmbientTag::R,
        }
    }
}

impl GammaModule {
    pub fn new(p: GermParams, ambient: Ambient, genvec: Vec<u64>) -> Result<Self> {
        let n = p.n as u64;
        let d = p.d as u64;
        if genvec.len() != p.n as usize {
            return Err(Error::invalid("genvec must have length n"));
        }
        let minvec = ambient.minvec(p)?;
        for (i, &g) in genvec.iter().enumerate() {
            if g % n != i as u64 {
                return Err(Error::invalid(format!(
                    "genvec[{i}] = {g} is not congruent to {i} mod {n}"
                )));
            }
            if g < minvec[i] {
                return Err(Error::invalid(format!(
                    "genvec[{i}] = {g} lies below the ambient minimum {}",
                    minvec[i]
                )));
            }
        }
        // d-closure: Delta + d inside Delta.
        for i in 0..p.n as usize {
            let j = ((i as u64 + d) % n) as usize;
            if genvec[j] > genvec[i] + d {
                return Err(Error::invalid(format!(
                    "d-closure fails at residue {i}: genvec[{j}] > genvec[{i}] + d"
                )));
            }
        }
        Ok(GammaModule { n: p.n, d: p.d, ambient: ambient.into(), genvec })
    }

    pub fn ambient_full(p: GermParams, ambient: Ambient) -> Result<Self> {
        let minvec = ambient.minvec(p)?;
        Self::new(p, ambient, minvec)
    }

    pub fn params(&self) -> GermParams {
        GermParams { n: self.n, d: self.d }
    }

    pub fn ambient(&self) -> Ambient {
        match self.ambient {
            AmbientTag::S => Ambient::S,
            AmbientTag::R => Ambient::R,
        }
    }

    pub fn genvec(&self) -> &[u64] {
        &self.genvec
    }

    fn minvec(&self) -> Vec<u64> {
        self.ambient().minvec(self.params()).expect("validated at construction")
    }

    /// Membership: k is in Delta iff k >= genvec[k mod n].
    pub fn contains(&self, k: i64) -> bool {
        if k < 0 {
            return false;
        }
        let k = k as u64;
        k >= self.genvec[(k % self.n as u64) as usize]
    }

    /// Membership in the ambient Gamma(E).
    pub fn ambient_contains(&self, k: i64) -> bool {
        if k < 0 {
            return false;
        }
        let minvec = self.minvec();
        (k as u64) >= minvec[(k as u64 % self.n as u64) as usize]
    }

    /// Codimension |Gamma(E) \ Delta|.
    pub fn codim(&self) -> u64 {
        let minvec = self.minvec();
        self.genvec
            .iter()
            .zip(minvec.iter())
            .map(|(g, m)| (g - m) / self.n as u64)
            .sum()
    }

    pub fn min_elt(&self) -> u64 {
        *self.genvec.iter().min().expect("n >= 1")
    }

    /// The n-generator set Gen_n(Delta) (the genvec as a set).
    pub fn gen_n(&self) -> Vec<u64> {
        let mut v = self.genvec.clone();
        v.sort_unstable();
        v
    }

    /// Generators: k in Delta with k - n and k - d both outside Delta.
    pub fn generators(&self) -> Vec<u64> {
        let d = self.d as i64;
        let mut gens: Vec<u64> = self
            .genvec
            .iter()
            .copied()
            .filter(|&g| !self.contains(g as i64 - d))
            .collect();
        gens.sort_unstable();
        gens
    }

    /// Nonnegative cogenerators: k outside Delta with k + n and k + d both
    /// inside. Only meaningful over the normalization S.
    pub fn cogenerators(&self) -> Vec<u64> {
        let n = self.n as i64;
        let d = self.d as i64;
        let mut out: Vec<u64> = self
            .genvec
            .iter()
            .filter_map(|&g| {
                let k = g as i64 - n;
                if k >= 0 && self.contains(k + d) {
                    Some(k as u64)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Minimal first-syzygy degrees of the module sum_{k in Delta} C t^k
    /// over the two-variable ring (u acts as +n, v as +d).
    ///
    /// The module has projective dimension one, so the degrees are pinned
    /// by the graded Hilbert series:
    ///   sum_i t^sigma_i = sum_i t^{genvec[i]+d} - (1-t^d) sum_i t^{genvec[i]}
    /// which evaluates to { g + d : g an n-generator with g + d not minimal
    /// in its residue class }. Validated against the independent
    /// linear-algebra oracle in tests/syzygy_oracle.rs.
    pub fn syzygies(&self) -> Result<Vec<u64>> {
        self.params().require_coprime()?;
        let n = self.n as u64;
        let d = self.d as u64;
        let mut out: Vec<u64> = self
            .genvec
            .iter()
            .filter_map(|&g| {
                let s = g + d;
                if s > self.genvec[(s % n) as usize] {
                    Some(s)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Number of elements of Gamma(E) strictly above x and outside Delta.
    fn count_above_outside(&self, x: u64) -> u64 {
        let bound = self.genvec.iter().copied().max().unwrap_or(0);
        let mut count = 0;
        for k in (x + 1)..bound {
            let ki = k as i64;
            if self.ambient_contains(ki) && !self.contains(ki) {
                count += 1;
            }
        }
        count
    }

    /// Affine-cell dimension: sum over generator/syzygy pairs of
    /// |Gamma(E)_{>gamma_i} \ Delta| - |Gamma(E)_{>sigma_i} \ Delta|.
    pub fn cell_dim(&self) -> Result<u64> {
        let gens = self.generators();
        let syz = self.syzygies()?;
        let plus: u64 = gens.iter().map(|&g| self.count_above_outside(g)).sum();
        let minus: u64 = syz.iter().map(|&s| self.count_above_outside(s)).sum();
        debug_assert!(plus >= minus, "cell dimension must be nonnegative");
        Ok(plus - minus)
    }

    /// xi_n(Delta, k) = #{ j in Gen_n(Delta) : k - d < j < k } for a
    /// generator k.
    pub fn xi_count(&self, k: u64) -> Result<u64> {
        if !self.generators().contains(&k) {
            return Err(Error::invalid(format!("{k} is not a generator")));
        }
        let lo = k as i64 - self.d as i64;
        Ok(self
            .genvec
            .iter()
            .filter(|&&j| (j as i64) > lo && j < k)
            .count() as u64)
    }

    /// lambda(Delta, k) = #{ j in Gen_n(Delta) : k + n < j < k + n + d }
    /// for a cogenerator k.
    pub fn lambda_count(&self, k: u64) -> Result<u64> {
        if !self.cogenerators().contains(&k) {
            return Err(Error::invalid(format!("{k} is not a cogenerator")));
        }
        let lo = k + self.n as u64;
        let hi = lo + self.d as u64;
        Ok(self.genvec.iter().filter(|&&j| j > lo && j < hi).count() as u64)
    }

    /// All nested partners Delta' with codim(Delta') = codim(Delta) + m and
    /// Delta >= Delta' >= Delta + Gamma_{>0}: exactly the subsets of
    /// Gen(Delta) of size m removed from Delta, i.e. those n-generators
    /// raised by n.
    pub fn nested_pairs(&self, m: usize) -> Vec<GammaModule> {
        let gens = self.generators();
        let mut out = Vec::new();
        let r = gens.len();
        if m > r {
            return out;
        }
        for mask in 0u32..(1u32 << r) {
            if mask.count_ones() as usize != m {
                continue;
            }
            let mut genvec = self.genvec.clone();
            for (bit, &g) in gens.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    let idx = (g % self.n as u64) as usize;
                    genvec[idx] = g + self.n as u64;
                }
            }
            let sub = GammaModule {
                n: self.n,
                d: self.d,
                ambient: self.ambient,
                genvec,
            };
            debug_assert!(sub.is_valid());
            out.push(sub);
        }
        out.sort();
        out
    }

    fn is_valid(&self) -> bool {
        GammaModule::new(self.params(), self.ambient(), self.genvec.clone()).is_ok()
    }

    /// True when (self, sub) is a valid nested pair.
    pub fn is_nested_with(&self, sub: &GammaModule) -> bool {
        if self.n != sub.n || self.d != sub.d || self.ambient != sub.ambient {
            return false;
        }
        let gens = self.generators();
        self.genvec.iter().zip(sub.genvec.iter()).all(|(&g, &g2)| {
            g2 == g || (g2 == g + self.n as u64 && gens.contains(&g))
        })
    }

    /// dim_{Delta,Delta'}: the nested-cell dimension.
    pub fn nested_dim(&self, sub: &GammaModule) -> Result<u64> {
        if !self.is_nested_with(sub) {
            return Err(Error::invalid("not a nested pair"));
        }
        let gens = self.generators();
        let syz = self.syzygies()?;
        let mut total: i64 = 0;
        for &g in &gens {
            if sub.contains(g as i64) {
                total += sub.count_above_outside(g) as i64;
            } else {
                total += self.count_above_outside(g) as i64;
            }
        }
        for &s in &syz {
            total -= sub.count_above_outside(s) as i64;
        }
        if total < 0 {
            return Err(Error::arith("nested dimension came out negative"));
        }
        Ok(total as u64)
    }

    /// Shifts Delta by +j (valid over S only).
    pub fn shift(&self, j: u64) -> GammaModule {
        let n = self.n as u64;
        let mut genvec = vec![0u64; self.n as usize];
        for &g in &self.genvec {
            let v = g + j;
            genvec[(v % n) as usize] = v;
        }
        GammaModule { n: self.n, d: self.d, ambient: self.ambient, genvec }
    }

    /// Writes Delta = Delta0 + j with min(Delta0) = 0; returns (Delta0, j).
    pub fn shift_normalize(&self) -> Result<(GammaModule, u64)> {
        if self.ambient() != Ambient::S {
            return Err(Error::invalid("shift normalization requires the ambient S"));
        }
        let j = self.min_elt();
        let n = self.n as u64;
        let mut genvec = vec![0u64; self.n as usize];
        for &g in &self.genvec {
            let v = g - j;
            genvec[(v % n) as usize] = v;
        }
        let d0 = GammaModule { n: self.n, d: self.d, ambient: self.ambient, genvec };
        debug_assert!(d0.is_valid());
        Ok((d0, j))
    }

    /// The gaps |Z>=0 \ Delta| over S (the area statistic of the Dyck path).
    pub fn area(&self) -> u64 {
        match self.ambient() {
            Ambient::S => self.codim(),
            Ambient::R => {
                let mut count = 0;
                let bound = self.genvec.iter().copied().max().unwrap_or(0);
                for k in 0..bound {
                    if !self.contains(k as i64) {
                        count += 1;
                    }
                }
                count
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "d": self.d,
            "ambient": self.ambient().as_str(),
            "genvec": self.genvec,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<GammaModule> {
        let n = v.get("n").and_then(|x| x.as_u64()).ok_or_else(|| Error::parse("missing n"))?;
        let d = v.get("d").and_then(|x| x.as_u64()).ok_or_else(|| Error::parse("missing d"))?;
        let ambient = match v.get("ambient").and_then(|x| x.as_str()) {
            Some("S") => Ambient::S,
            Some("R") => Ambient::R,
            _ => return Err(Error::parse("ambient must be \"S\" or \"R\"")),
        };
        let genvec: Vec<u64> = v
            .get("genvec")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::parse("missing genvec"))?
            .iter()
            .map(|x| x.as_u64().ok_or_else(|| Error::parse("genvec entries must be nonnegative integers")))
            .collect::<Result<_>>()?;
        GammaModule::new(GermParams::new(n as u32, d as u32)?, ambient, genvec)
    }
}

/// Enumerates I^ell(E): all Delta with codim = ell, in lexicographic
/// genvec order. Depth-first over genvec increments (steps of n) with the
/// d-closure constraint pruning.
pub fn enumerate_modules(p: GermParams, ambient: Ambient, ell: u64) -> Result<Vec<GammaModule>> {
    if ambient == Ambient::R {
        p.require_coprime()?;
    }
    let minvec = ambient.minvec(p)?;
    let n = p.n as usize;
    let mut out = Vec::new();
    let mut steps = vec![0u64; n];

    fn rec(
        p: GermParams,
        ambient: Ambient,
        minvec: &[u64],
        steps: &mut Vec<u64>,
        idx: usize,
        remaining: u64,
        out: &mut Vec<GammaModule>,
    ) {
        let n = p.n as usize;
        if idx == n {
            if remaining == 0 {
                let genvec: Vec<u64> = (0..n)
                    .map(|i| minvec[i] + steps[i] * p.n as u64)
                    .collect();
                if let Ok(m) = GammaModule::new(p, ambient, genvec) {
                    out.push(m);
                }
            }
            return;
        }
        for s in 0..=remaining {
            steps[idx] = s;
            rec(p, ambient, minvec, steps, idx + 1, remaining - s, out);
        }
        steps[idx] = 0;
    }

    rec(p, ambient, &minvec, &mut steps, 0, ell, &mut out);
    out.sort();
    Ok(out)
}

/// The fundamental domain D_{n,d}: modules over S with min(Delta) = 0,
/// ordered lexicographically by genvec.
pub fn fundamental_domain(p: GermParams) -> Result<Vec<GammaModule>> {
    p.require_coprime()?;
    // Every element of D_{n,d} has codim <= delta and contains 0; collect
    // the 0-normalized modules across codimensions.
    let delta = p.delta();
    let mut out = Vec::new();
    for ell in 0..=delta {
        for m in enumerate_modules(p, Ambient::S, ell)? {
            if m.min_elt() == 0 {
                out.push(m);
            }
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn module(n: u32, d: u32, amb: Ambient, genvec: &[u64]) -> GammaModule {
        GammaModule::new(GermParams::new(n, d).unwrap(), amb, genvec.to_vec()).unwrap()
    }

    #[test]
    fn germ_params_delta() {
        assert_eq!(GermParams::new(2, 3).unwrap().delta(), 1);
        assert_eq!(GermParams::new(3, 4).unwrap().delta(), 3);
        assert_eq!(GermParams::new(2, 2).unwrap().delta(), 1);
        assert_eq!(GermParams::new(3, 3).unwrap().delta(), 3);
        assert_eq!(GermParams::new(7, 5).unwrap().delta(), 12);
    }

    #[test]
    fn enumerate_codim_zero() {
        let p = GermParams::new(3, 4).unwrap();
        let mods = enumerate_modules(p, Ambient::S, 0).unwrap();
        assert_eq!(mods.len(), 1);
        assert_eq!(mods[0].genvec(), &[0, 1, 2]);
    }

    #[test]
    fn enumerate_min_delta_table() {
        // I^delta(S) for (3,4) is the five modules of the min-delta table.
        let p = GermParams::new(3, 4).unwrap();
        let mods = enumerate_modules(p, Ambient::S, 3).unwrap();
        let mut gens: Vec<Vec<u64>> = mods.iter().map(|m| m.gen_n()).collect();
        gens.sort();
        let mut want = vec![
            vec![3, 4, 5],
            vec![2, 4, 6],
            vec![2, 3, 7],
            vec![1, 5, 6],
            vec![0, 4, 8],
        ];
        want.iter_mut().for_each(|v| v.sort_unstable());
        want.sort();
        assert_eq!(gens, want);
    }

    #[test]
    fn enumerate_cusp_hilb() {
        // (2,3), E = R, ell = 2: the two modules {2,4,5,...} and {3,4,5,...}.
        let p = GermParams::new(2, 3).unwrap();
        let mods = enumerate_modules(p, Ambient::R, 2).unwrap();
        assert_eq!(mods.len(), 2);
        let gens: Vec<Vec<u64>> = mods.iter().map(|m| m.genvec().to_vec()).collect();
        assert!(gens.contains(&vec![2, 5]));
        assert!(gens.contains(&vec![4, 3]));
    }

    #[test]
    fn generators_examples() {
        // (3,4) Delta_{5,0,4}: genvec [0,4,5], Gen = {0,5}.
        let m = module(3, 4, Ambient::S, &[0, 4, 5]);
        assert_eq!(m.generators(), vec![0, 5]);
        // (7,5) with Gen_7 = {0,5,3,1,6,11,9}: Gen = {0,1,3,9}.
        let m = module(7, 5, Ambient::S, &[0, 1, 9, 3, 11, 5, 6]);
        assert_eq!(m.generators(), vec![0, 1, 3, 9]);
        // Ambient module over R: Gen = {0}; over S the d-test decides.
        let p = GermParams::new(3, 4).unwrap();
        let r = GammaModule::ambient_full(p, Ambient::R).unwrap();
        assert_eq!(r.generators(), vec![0]);
    }

    #[test]
    fn cogenerators_examples() {
        let m = module(3, 4, Ambient::S, &[0, 4, 5]);
        assert_eq!(m.cogenerators(), vec![1, 2]);
        let full = module(3, 4, Ambient::S, &[0, 1, 2]);
        assert!(full.cogenerators().is_empty());
        let z = module(2, 3, Ambient::S, &[0, 1]);
        assert!(z.cogenerators().is_empty());
    }

    #[test]
    fn syzygy_examples() {
        let z = module(2, 3, Ambient::S, &[0, 1]);
        assert_eq!(z.syzygies().unwrap(), vec![3, 4]);
        let m = module(2, 3, Ambient::S, &[0, 3]);
        assert_eq!(m.syzygies().unwrap(), vec![6]);
        let m = module(2, 3, Ambient::S, &[4, 3]);
        assert_eq!(m.syzygies().unwrap(), vec![6, 7]);
    }

    #[test]
    fn cell_dim_examples() {
        let m = module(2, 3, Ambient::R, &[2, 5]);
        assert_eq!(m.cell_dim().unwrap(), 1);
        let m = module(2, 3, Ambient::R, &[4, 3]);
        assert_eq!(m.cell_dim().unwrap(), 0);
        let m = module(3, 4, Ambient::S, &[0, 4, 5]);
        assert_eq!(m.cell_dim().unwrap(), 2);
    }

    #[test]
    fn xi_lambda_examples() {
        let m = module(3, 4, Ambient::S, &[0, 1, 2]);
        assert_eq!(m.xi_count(2).unwrap(), 2);
        assert_eq!(m.xi_count(1).unwrap(), 1);
        assert_eq!(m.xi_count(0).unwrap(), 0);
        assert!(m.xi_count(5).is_err());

        let m = module(3, 4, Ambient::S, &[0, 4, 5]);
        assert_eq!(m.lambda_count(1).unwrap(), 1);
        assert_eq!(m.lambda_count(2).unwrap(), 0);
        assert!(m.lambda_count(3).is_err());
        // (3,4) Delta_{0,4,8}: Cogen = {5} with no n-generator in window.
        let m = module(3, 4, Ambient::S, &[0, 4, 8]);
        assert_eq!(m.cogenerators(), vec![5]);
        assert_eq!(m.lambda_count(5).unwrap(), 0);
    }

    #[test]
    fn nested_pairs_basic() {
        let z = module(2, 3, Ambient::S, &[0, 1]);
        assert_eq!(z.nested_pairs(0), vec![z.clone()]);
        let one = z.nested_pairs(1);
        assert_eq!(one.len(), 2);
        for sub in &one {
            assert_eq!(sub.codim(), 1);
            assert!(z.is_nested_with(sub));
            assert_eq!(z.nested_dim(sub).unwrap() >= 0, true);
        }
        // Total over m equals 2^{|Gen|}.
        let total: usize = (0..=2).map(|m| z.nested_pairs(m).len()).sum();
        assert_eq!(total, 1 << z.generators().len());
        // m = 0 reproduces cell_dim.
        assert_eq!(z.nested_dim(&z).unwrap(), z.cell_dim().unwrap());
    }

    #[test]
    fn shift_normalize_examples() {
        let z = module(2, 3, Ambient::S, &[0, 1]);
        let (d0, j) = z.shift_normalize().unwrap();
        assert_eq!((d0, j), (module(2, 3, Ambient::S, &[0, 1]), 0));
        let m = module(2, 3, Ambient::S, &[2, 3]);
        let (d0, j) = m.shift_normalize().unwrap();
        assert_eq!(j, 2);
        assert_eq!(d0.genvec(), &[0, 1]);
        assert_eq!(m.cell_dim().unwrap(), d0.cell_dim().unwrap());
    }

    #[test]
    fn fundamental_domain_23() {
        let p = GermParams::new(2, 3).unwrap();
        let d = fundamental_domain(p).unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.iter().all(|m| m.min_elt() == 0));
    }

    #[test]
    fn beta_gen_syz_identity() {
        // |xi(Delta,k)| = #{gamma_i < k} - #{sigma_i < k} for every
        // generator of every enumerated module at small (n,d).
        for (n, d) in [(2u32, 3u32), (2, 5), (3, 4), (3, 5)] {
            let p = GermParams::new(n, d).unwrap();
            for amb in [Ambient::S, Ambient::R] {
                for ell in 0..=(p.delta() + 2) {
                    for m in enumerate_modules(p, amb, ell).unwrap() {
                        let gens = m.generators();
                        let syz = m.syzygies().unwrap();
                        for &k in &gens {
                            let lhs = m.xi_count(k).unwrap();
                            let g = gens.iter().filter(|&&x| x < k).count() as u64;
                            let s = syz.iter().filter(|&&x| x < k).count() as u64;
                            assert_eq!(lhs, g - s, "(n,d)=({n},{d}) {:?} k={k}", m.genvec());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn shift_invariance() {
        let p = GermParams::new(3, 5).unwrap();
        for ell in 0..=4 {
            for m in enumerate_modules(p, Ambient::S, ell).unwrap() {
                let shifted = m.shift(3);
                assert_eq!(m.cell_dim().unwrap(), shifted.cell_dim().unwrap());
                let g1: Vec<u64> = m.generators().iter().map(|g| g + 3).collect();
                assert_eq!(g1, shifted.generators());
                for &k in &m.generators() {
                    assert_eq!(
                        m.xi_count(k).unwrap(),
                        shifted.xi_count(k + 3).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn syzygy_generator_balance() {
        for (n, d) in [(2u32, 3u32), (3, 4), (4, 5)] {
            let p = GermParams::new(n, d).unwrap();
            for ell in 0..=p.delta() {
                for m in enumerate_modules(p, Ambient::S, ell).unwrap() {
                    assert_eq!(m.generators().len(), m.syzygies().unwrap().len());
                }
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let m = module(3, 4, Ambient::S, &[3, 4, 5]);
        let j = m.to_json();
        assert_eq!(GammaModule::from_json(&j).unwrap(), m);
        assert_eq!(j["ambient"], "S");
    }
}
