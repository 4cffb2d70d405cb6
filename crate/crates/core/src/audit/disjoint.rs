//! Checks the `(k+1)` bound of the disjoint locally greedy allocator and
//! every intermediate inequality of its proof, on concrete runs.
//!
//! With `O` an optimal disjoint allocation and `I` the greedy outcome, let
//! `O_i^0 = O_i - ∪_{j≠i} I_j` and `O'_i = O_i^0 - I_i`. For each player
//! `e_i` is its step with the smallest marginal gain and `S^{e_i}` the
//! partial allocation just before that step.

use alloc::vec::Vec;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::checks::{check_anonymity, CheckOptions, Verdict};
use crate::error::{Error, Result};
use crate::greedy::{brute_force_opt, locally_greedy, GreedyRun, TurnSequence};
use crate::mechanisms::uniform::random_word;
use crate::model::WelfareModel;
use crate::profile::{multinomial, multiset_permutations, AllocationProfile, BidProfile, ElementSet, ProfileDomain};
use crate::rational::{int, Rational};

/// One `lhs <= rhs` step of the argument, evaluated exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainLink {
    pub name: &'static str,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl ChainLink {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointCheck {
    pub sequence: TurnSequence,
    pub greedy: AllocationProfile,
    pub greedy_welfare: Rational,
    pub o0_welfare: Rational,
    pub links: Vec<ChainLink>,
}

impl DisjointCheck {
    pub fn all_hold(&self) -> bool {
        self.links.iter().all(ChainLink::holds)
    }

    pub fn link(&self, name: &str) -> Option<&ChainLink> {
        self.links.iter().find(|l| l.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointBoundReport {
    pub bids: BidProfile,
    pub opt: AllocationProfile,
    pub opt_welfare: Rational,
    /// Whether every turn order was checked (otherwise a seeded sample).
    pub exhaustive: bool,
    pub checks: Vec<DisjointCheck>,
}

impl DisjointBoundReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(DisjointCheck::all_hold)
    }

    /// Largest `OPT / w(I)` over the checked orders, `None` if some run has zero welfare.
    pub fn worst_ratio(&self) -> Option<Rational> {
        self.checks
            .iter()
            .map(|c| (!c.greedy_welfare.is_zero()).then(|| &self.opt_welfare / &c.greedy_welfare))
            .try_fold(Rational::zero(), |acc, r| r.map(|r| if r > acc { r } else { acc }))
    }
}

/// Audit context for one model; construction verifies anonymity once.
pub struct DisjointAudit<'m, M: ?Sized> {
    model: &'m M,
    pub opt_limit: u128,
    /// Most turn orders checked exhaustively before switching to sampling.
    pub order_cap: u128,
    pub samples: usize,
    pub rng_seed: u64,
}

impl<'m, M: WelfareModel + ?Sized> DisjointAudit<'m, M> {
    /// Fails with a precondition error when the model is not anonymous on
    /// disjoint profiles within `opts`.
    pub fn new(model: &'m M, opts: &CheckOptions) -> Result<Self> {
        let opts = CheckOptions { domain: ProfileDomain::Disjoint, ..*opts };
        if let Verdict::Fail(w) = check_anonymity(model, &opts)? {
            return Err(Error::Precondition(alloc::format!("model is not anonymous: {w}")));
        }
        Ok(Self { model, opt_limit: crate::greedy::DEFAULT_OPT_LIMIT, order_cap: 2_000, samples: 64, rng_seed: 0 })
    }

    pub fn verify(&self, bids: &BidProfile) -> Result<DisjointBoundReport> {
        let model = self.model;
        let (opt, opt_welfare) = brute_force_opt(model, bids, true, self.opt_limit)?;
        let exhaustive = multinomial(bids.budgets()) <= self.order_cap;
        let orders: Vec<TurnSequence> = if exhaustive {
            multiset_permutations(bids.budgets()).into_iter().map(TurnSequence::new).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(self.rng_seed);
            (0..self.samples).map(|_| random_word(bids, &mut rng)).collect()
        };
        let checks = orders
            .into_iter()
            .map(|seq| {
                let run = locally_greedy(model, &seq, true)?;
                self.check_run(bids, &opt, &opt_welfare, seq, run)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DisjointBoundReport { bids: bids.clone(), opt, opt_welfare, exhaustive, checks })
    }

    fn check_run(
        &self,
        bids: &BidProfile,
        opt: &AllocationProfile,
        opt_welfare: &Rational,
        sequence: TurnSequence,
        run: GreedyRun,
    ) -> Result<DisjointCheck> {
        let model = self.model;
        let k = model.player_count();
        let n = model.ground_size();
        let greedy = run.profile.clone();
        let w_i = run.welfare.clone();
        let rho = |base: &AllocationProfile, i: usize, e: usize| -> Result<Rational> {
            Ok(model.welfare(&base.with_added(i, e))? - model.welfare(base)?)
        };

        let o0: Vec<ElementSet> = (0..k).map(|i| opt.set(i).difference(&greedy.others_union(i))).collect();
        let o0_profile = AllocationProfile::new(o0.clone(), n)?;
        let o0_welfare = model.welfare(&o0_profile)?;
        let o_prime: Vec<ElementSet> = (0..k).map(|i| o0[i].difference(greedy.set(i))).collect();

        let mut shifted_sum = Rational::zero();
        for s in 1..k {
            let sets = (0..k).map(|j| opt.set(j).intersection(greedy.set((j + s) % k))).collect();
            shifted_sum += model.welfare(&AllocationProfile::new(sets, n)?)?;
        }

        // Partial allocations before each step, replayed from the trace.
        let mut partial = Vec::with_capacity(run.steps.len());
        let mut current = AllocationProfile::empty(k, n);
        for step in &run.steps {
            partial.push(current.clone());
            current = current.with_added(step.player, step.element);
        }

        let mut at_end = Rational::zero();
        let mut at_min = Rational::zero();
        let mut by_greedy_rule = Rational::zero();
        let mut by_count = Rational::zero();
        for i in 0..k {
            let min_step = run
                .steps
                .iter()
                .enumerate()
                .filter(|(_, s)| s.player == i)
                .min_by(|(_, a), (_, b)| a.gain.cmp(&b.gain));
            let Some((idx, step)) = min_step else { continue };
            let before = &partial[idx];
            for e in o_prime[i].iter() {
                at_end += rho(&greedy, i, e)?;
                at_min += rho(before, i, e)?;
            }
            by_greedy_rule += &step.gain * int(o_prime[i].len() as i64);
            by_count += &step.gain * int(bids.budgets()[i] as i64);
        }

        let kp1 = int(k as i64 + 1);
        let links = alloc::vec![
            ChainLink { name: "opt-within-k+1", lhs: opt_welfare.clone(), rhs: &kp1 * &w_i },
            ChainLink { name: "decomposition", lhs: opt_welfare.clone(), rhs: &o0_welfare + &shifted_sum },
            ChainLink { name: "shifted-parts", lhs: shifted_sum, rhs: int(k as i64 - 1) * &w_i },
            ChainLink { name: "own-part-within-2x", lhs: o0_welfare.clone(), rhs: int(2) * &w_i },
            ChainLink { name: "marginals-at-end", lhs: o0_welfare.clone(), rhs: &w_i + &at_end },
            ChainLink { name: "marginals-at-min-step", lhs: &w_i + &at_end, rhs: &w_i + &at_min },
            ChainLink { name: "greedy-rule", lhs: &w_i + &at_min, rhs: &w_i + &by_greedy_rule },
            ChainLink { name: "budget-count", lhs: &w_i + &by_greedy_rule, rhs: &w_i + &by_count },
            ChainLink { name: "min-step-total", lhs: &w_i + &by_count, rhs: int(2) * &w_i },
        ];
        Ok(DisjointCheck { sequence, greedy, greedy_welfare: w_i, o0_welfare, links })
    }
}

/// One-shot form of [`DisjointAudit::verify`].
pub fn verify_disjoint_bound<M: WelfareModel + ?Sized>(
    model: &M,
    bids: &BidProfile,
    opts: &CheckOptions,
) -> Result<DisjointBoundReport> {
    DisjointAudit::new(model, opts)?.verify(bids)
}
