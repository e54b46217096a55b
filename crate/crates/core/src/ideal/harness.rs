//! Random members of `𝐈` with certificates, and the closure harness.

use rand::Rng;
use serde::Serialize;

use crate::arith::Field;
use crate::gradedmod::{
    dual, random_extension, random_module, tensor, v_k, GradedModule, HomogeneousVector, ModuleError, RandomModules,
    TensorVariant,
};
use crate::hopf::Structure;

use super::{is_in_i, FiltrationCertificate, FiltrationStep, IdealSearch, Membership};

/// A module together with a certificate of membership in `𝐈`.
#[derive(Clone, Debug)]
pub struct CertifiedMember<F: Field> {
    pub module: GradedModule<F>,
    pub certificate: FiltrationCertificate<F::Elem>,
}

/// An iterated extension of shifted strings of total dimension at most
/// `max_dim`, built on either side at each step. The certificate follows
/// the construction.
pub fn random_member<F: Field, R: Rng>(
    structure: &Structure<F>,
    max_dim: usize,
    window: i64,
    rng: &mut R,
) -> Result<CertifiedMember<F>, ModuleError> {
    let t = structure.num_primes();
    let f = structure.field();
    let fits: Vec<usize> = (0..t).filter(|k| structure.prime(*k) as usize <= max_dim).collect();
    assert!(!fits.is_empty(), "max_dim is smaller than every prime");
    let piece = |rng: &mut R| -> Result<(GradedModule<F>, FiltrationStep<F::Elem>), ModuleError> {
        let k = fits[rng.gen_range(0..fits.len())];
        let b = rng.gen_range(-window..=window);
        let v = v_k(structure, k, b)?;
        let step = FiltrationStep { k, shift: b, generator: HomogeneousVector::new(-b, vec![f.one()]) };
        Ok((v, step))
    };
    let (mut module, first) = piece(rng)?;
    let mut steps = vec![first];
    loop {
        let room = max_dim - module.total_dim();
        if room < fits.iter().map(|k| structure.prime(*k) as usize).min().unwrap_or(usize::MAX) || rng.gen_bool(0.2) {
            break;
        }
        let (v, step) = piece(rng)?;
        if v.total_dim() > room {
            continue;
        }
        if rng.gen_bool(0.5) {
            let ext = random_extension(&module, &v, rng)?;
            let lifted = step_through(&step, |g| {
                let mut c = vec![f.zero(); module.dim(g.degree)];
                c.extend(g.coords.iter().cloned());
                c
            });
            steps = steps.iter().map(|s| step_through(s, |g| ext.inclusion.apply(g.degree, &g.coords))).collect();
            steps.push(lifted);
            module = ext.module;
        } else {
            let ext = random_extension(&v, &module, rng)?;
            let mut lifted = vec![step_through(&step, |g| ext.inclusion.apply(g.degree, &g.coords))];
            for s in &steps {
                lifted.push(step_through(s, |g| {
                    let mut c = vec![f.zero(); v.dim(g.degree)];
                    c.extend(g.coords.iter().cloned());
                    c
                }));
            }
            steps = lifted;
            module = ext.module;
        }
    }
    let certificate = FiltrationCertificate { steps };
    debug_assert!(certificate.replay(&module).is_ok());
    Ok(CertifiedMember { module, certificate })
}

fn step_through<E: Clone>(step: &FiltrationStep<E>, map: impl Fn(&HomogeneousVector<E>) -> Vec<E>) -> FiltrationStep<E> {
    FiltrationStep {
        k: step.k,
        shift: step.shift,
        generator: HomogeneousVector::new(step.generator.degree, map(&step.generator)),
    }
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct ClosureCounts {
    pub certified: usize,
    pub refuted: usize,
    pub unresolved: usize,
}

impl ClosureCounts {
    fn record<E>(&mut self, outcome: &Membership<E>) {
        match outcome {
            Membership::Member(_) => self.certified += 1,
            Membership::NotMember(_) => self.refuted += 1,
            Membership::NotCertified { .. } => self.unresolved += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.certified + self.refuted + self.unresolved
    }

    pub fn all_certified(&self) -> bool {
        self.certified == self.total()
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ClosureReport {
    pub seed: u64,
    pub members: usize,
    pub tensor_left: ClosureCounts,
    pub tensor_right: ClosureCounts,
    pub duals: ClosureCounts,
    pub extensions: ClosureCounts,
    pub max_nodes: usize,
}

impl ClosureReport {
    pub fn all_certified(&self) -> bool {
        [&self.tensor_left, &self.tensor_right, &self.duals, &self.extensions].iter().all(|c| c.all_certified())
    }
}

/// Bounds for [`closure_harness`].
#[derive(Clone, Debug)]
pub struct ClosureBounds {
    pub members: usize,
    pub member_dim: usize,
    pub partner_dim: usize,
    pub window: i64,
}

/// Builds random certified members and checks that tensor products with
/// random modules (on both sides), duals and extensions of cyclically
/// consecutive members are certified again.
pub fn closure_harness<F: Field, R: Rng>(
    structure: &Structure<F>,
    bounds: &ClosureBounds,
    search: &IdealSearch,
    rng: &mut R,
) -> Result<ClosureReport, ModuleError> {
    let mut report = ClosureReport { seed: search.seed, members: bounds.members, ..Default::default() };
    let mut first: Option<GradedModule<F>> = None;
    let mut previous: Option<GradedModule<F>> = None;
    let partners = RandomModules::new(1, bounds.partner_dim, bounds.window);
    let run = |m: &GradedModule<F>, counts: &mut ClosureCounts, max_nodes: &mut usize| -> Result<(), ModuleError> {
        let outcome = is_in_i(m, search)?;
        if let Membership::NotCertified { nodes } = &outcome {
            *max_nodes = (*max_nodes).max(*nodes);
        }
        counts.record(&outcome);
        Ok(())
    };
    for _ in 0..bounds.members {
        let member = random_member(structure, bounds.member_dim, bounds.window, rng)?;
        let u = member.module;
        let partner = random_module(structure, &partners, rng);
        let mut max_nodes = report.max_nodes;
        run(&tensor(&u, &partner, TensorVariant::Q)?, &mut report.tensor_left, &mut max_nodes)?;
        run(&tensor(&partner, &u, TensorVariant::Q)?, &mut report.tensor_right, &mut max_nodes)?;
        run(&dual(&u), &mut report.duals, &mut max_nodes)?;
        if let Some(prev) = &previous {
            run(&random_extension(prev, &u, rng)?.module, &mut report.extensions, &mut max_nodes)?;
        }
        report.max_nodes = max_nodes;
        first.get_or_insert_with(|| u.clone());
        previous = Some(u);
    }
    if let (Some(last), Some(first)) = (&previous, &first) {
        if bounds.members > 1 {
            let mut max_nodes = report.max_nodes;
            run(&random_extension(last, first, rng)?.module, &mut report.extensions, &mut max_nodes)?;
            report.max_nodes = max_nodes;
        }
    }
    Ok(report)
}
