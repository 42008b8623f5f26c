//! Builds every stage for one `(type, weights)` pair.

use std::path::Path;

use num_bigint::BigInt;

use crate::cellmod::{self, CellModule, CellModules, Specialization, SpecializedData};
use crate::cells::CellData;
use crate::cellular::{self, AxiomInputs, CellDatum};
use crate::coxeter::{CartanType, CoxeterGroup, Elem, WeightFunction};
use crate::error::Result;
use crate::exactalg::integer::det_int;
use crate::hecke::{CachedTables, HTable, HeckeAlgebra, HeckeElement, KlTable, CACHE_FORMAT};
use crate::jreps::{self, JIrrep};
use crate::jring::{JRing, PhiMap};
use crate::report::Report;
use crate::PolyMatrix;

/// Bar invariance of `c_w` is checked directly only up to this group order.
const BAR_CHECK_LIMIT: usize = 200;

/// The Hecke algebra with its Kazhdan-Lusztig data.
pub struct Tables {
    pub alg: HeckeAlgebra,
    pub kl: KlTable,
    pub h: HTable,
    /// Whether the tables came from the cache file.
    pub from_cache: bool,
}

impl Tables {
    /// Loads `kl` and `h` from `cache` when it matches, otherwise builds
    /// them and writes the cache.
    pub fn build(cartan: CartanType, weights: WeightFunction, cap: usize, cache: Option<&Path>) -> Result<Self> {
        let group = CoxeterGroup::build(cartan, cap)?;
        let alg = HeckeAlgebra::new(group, weights);
        let name = cartan.to_string();
        let values = alg.weights().values().to_vec();
        if let Some(t) = cache.and_then(|p| CachedTables::load(p, &name, &values)) {
            return Ok(Self { alg, kl: t.kl, h: t.h, from_cache: true });
        }
        let kl = KlTable::build(&alg);
        let h = HTable::build(&alg, &kl);
        if let Some(p) = cache {
            let t = CachedTables { format: CACHE_FORMAT, cartan_type: name, weights: values, kl, h };
            t.save(p)?;
            return Ok(Self { alg, kl: t.kl, h: t.h, from_cache: false });
        }
        Ok(Self { alg, kl, h, from_cache: false })
    }
}

/// All derived objects.
pub struct Pipeline {
    pub tables: Tables,
    pub inverse: Vec<Elem>,
    pub dagger: Vec<HeckeElement>,
    pub cells: CellData,
    pub j: JRing,
    pub phi: PhiMap,
    pub reps: Vec<JIrrep>,
    pub bad_primes: Vec<u64>,
    pub datum: CellDatum,
    pub transition_det: BigInt,
    pub modules: Vec<CellModule>,
    pub grams: Vec<PolyMatrix>,
}

impl Pipeline {
    pub fn build(tables: Tables, seed: u64) -> Result<Self> {
        let Tables { alg, kl, h, .. } = &tables;
        let g = alg.group();
        let n = g.order();
        let inverse: Vec<Elem> = g.elements().map(|w| g.inverse(w)).collect();
        let dagger = kl.dagger_basis(alg);
        let cells = CellData::build(alg, kl, h)?;
        let j = JRing::build(h, &cells, inverse.clone());
        let phi = PhiMap::build(h, &cells);
        let mut reps = jreps::irreducible_reps(g, &cells, &j, seed)?;
        jreps::compute_f(g, &mut reps)?;
        let bad_primes = jreps::bad_primes(&reps);
        let datum = CellDatum::build(n, &inverse, &cells, &reps);
        let tm = datum.transition_matrix(n);
        let transition_det = if tm.is_square() { det_int(&tm) } else { BigInt::from(0) };
        let mut p = Self {
            tables,
            inverse,
            dagger,
            cells,
            j,
            phi,
            reps,
            bad_primes,
            datum,
            transition_det,
            modules: Vec::new(),
            grams: Vec::new(),
        };
        let gens = p.axiom_inputs().phi_generators();
        p.modules = p.reps.iter().map(|r| CellModule::new(r, &gens)).collect();
        p.grams = p.reps.iter().map(|r| cellmod::gram_g(&p.datum, r, &p.phi, n)).collect();
        Ok(p)
    }

    pub fn alg(&self) -> &HeckeAlgebra {
        &self.tables.alg
    }

    pub fn group(&self) -> &CoxeterGroup {
        self.tables.alg.group()
    }

    pub fn axiom_inputs(&self) -> AxiomInputs<'_> {
        AxiomInputs {
            alg: &self.tables.alg,
            kl: &self.tables.kl,
            dagger: &self.dagger,
            cells: &self.cells,
            j: &self.j,
            phi: &self.phi,
            reps: &self.reps,
            bad_primes: &self.bad_primes,
        }
    }

    pub fn cell_modules(&self) -> CellModules<'_> {
        CellModules {
            reps: &self.reps,
            modules: &self.modules,
            grams: &self.grams,
            transition_det: &self.transition_det,
            bad_primes: &self.bad_primes,
        }
    }

    pub fn specialize(&self, sp: &Specialization) -> Result<SpecializedData> {
        cellmod::specialize(&self.cell_modules(), sp)
    }

    /// Every verification suite.
    pub fn verify(&self) -> Report {
        let alg = self.alg();
        let mut r = Report::new();
        r.record("KL basis", self.tables.kl.validate(alg, BAR_CHECK_LIMIT).map_err(|e| e.to_string()));
        r.extend(self.cells.check(alg));
        r.extend(self.j.check(alg, &self.cells));
        r.extend(self.phi.check(alg, &self.tables.kl, &self.dagger, &self.j));
        r.extend(jreps::check(self.group(), &self.cells, &self.j, &self.reps));
        r.extend(cellular::check_axioms(&self.datum, &self.axiom_inputs()));
        for ((m, g), rep) in self.modules.iter().zip(&self.grams).zip(&self.reps) {
            r.record(format!("Hecke relations on W({})", rep.name()), m.check_relations(alg));
            r.extend(cellmod::check_gram(m, g, rep));
        }
        r
    }
}
