//! The pure-strategy payoff matrix and the expected payoffs it induces.

use crate::params::GameParameters;
use crate::state::StrategyState;

/// One pure-strategy outcome of the three-party game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Outcome {
    pub bank_improves: bool,
    pub a_provides: bool,
    /// `true` when B finances through the bank, `false` through A.
    pub b_uses_bank: bool,
}

impl Outcome {
    /// All eight outcomes, in table order (`x` major, then `y`, then `z`;
    /// "yes" before "no").
    pub fn all() -> [Outcome; 8] {
        let mut out = [Outcome {
            bank_improves: true,
            a_provides: true,
            b_uses_bank: true,
        }; 8];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = Outcome {
                bank_improves: k & 4 == 0,
                a_provides: k & 2 == 0,
                b_uses_bank: k & 1 == 0,
            };
        }
        out
    }

    fn index(self) -> usize {
        (usize::from(!self.bank_improves) << 2)
            | (usize::from(!self.a_provides) << 1)
            | usize::from(!self.b_uses_bank)
    }

    /// Probability of this outcome when each party mixes independently.
    pub fn weight(self, s: &StrategyState) -> f64 {
        let pick = |yes: bool, p: f64| if yes { p } else { 1.0 - p };
        pick(self.bank_improves, s.x) * pick(self.a_provides, s.y) * pick(self.b_uses_bank, s.z)
    }
}

/// Expected payoffs of the three parties in one outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutcomePayoffs {
    pub bank: f64,
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PayoffTable {
    entries: [OutcomePayoffs; 8],
}

impl PayoffTable {
    pub fn get(&self, outcome: Outcome) -> OutcomePayoffs {
        self.entries[outcome.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Outcome, OutcomePayoffs)> + '_ {
        Outcome::all().into_iter().map(move |o| (o, self.get(o)))
    }
}

/// Fills the payoff matrix.
///
/// A defaulting borrower costs the bank its interest only, and B's bank
/// payoff is conditional on approval with probability `w`.
pub fn outcome_payoffs(p: &GameParameters) -> PayoffTable {
    let r = p.raw();
    let loan_income = r.u * r.m * r.i + (1.0 - r.u) * 0.0;
    let approved_loan = r.w * (r.i - r.m * r.i) + (1.0 - r.w) * 0.0;
    let a_return = -r.c_af + (r.v * r.e * r.i + (1.0 - r.v) * 0.0) + r.c_m;
    let a_channel = r.i - r.c_m - r.e * r.i;

    let mut entries = [OutcomePayoffs {
        bank: 0.0,
        a: 0.0,
        b: 0.0,
    }; 8];
    for o in Outcome::all() {
        let tech_cost = if o.bank_improves { r.c_g } else { 0.0 };
        let bank = match (o.bank_improves, o.b_uses_bank) {
            (true, true) => r.r_gf + loan_income - r.c_g,
            (false, true) => r.r_gf + loan_income - r.c_gf,
            (_, false) => r.r_gf - tech_cost,
        };
        let a = if o.a_provides && !o.b_uses_bank {
            a_return
        } else {
            0.0
        };
        let b = match (o.b_uses_bank, o.bank_improves, o.a_provides) {
            (true, true, _) => approved_loan,
            (true, false, _) => approved_loan - r.c_bf,
            (false, _, true) => a_channel,
            (false, _, false) => 0.0,
        };
        entries[o.index()] = OutcomePayoffs { bank, a, b };
    }
    PayoffTable { entries }
}

/// Expected payoffs of each pure strategy against the current mix, and the
/// population averages.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpectedPayoffs {
    /// Bank, improving.
    pub e11: f64,
    /// Bank, not improving.
    pub e12: f64,
    pub e_bar_x: f64,
    /// A, providing credit.
    pub e21: f64,
    /// A, not providing.
    pub e22: f64,
    pub e_bar_y: f64,
    /// B, bank channel.
    pub e31: f64,
    /// B, A channel.
    pub e32: f64,
    pub e_bar_z: f64,
}

/// Probability-weighted sums over the payoff table, one party's strategy
/// held fixed at a time. No algebraic simplification is applied.
pub fn expected_payoffs(p: &GameParameters, s: &StrategyState) -> ExpectedPayoffs {
    let table = outcome_payoffs(p);
    let StrategyState { x, y, z } = *s;

    let average = |pay: &dyn Fn(OutcomePayoffs) -> f64| {
        table
            .iter()
            .map(|(o, po)| pay(po) * o.weight(s))
            .sum::<f64>()
    };

    // The pinned player's own weight is divided back out by evaluating at
    // its pure strategy.
    let pure_x = |improve: bool| {
        let s = StrategyState {
            x: if improve { 1.0 } else { 0.0 },
            y,
            z,
        };
        table
            .iter()
            .filter(|(o, _)| o.bank_improves == improve)
            .map(|(o, po)| po.bank * o.weight(&s))
            .sum::<f64>()
    };
    let pure_y = |provide: bool| {
        let s = StrategyState {
            x,
            y: if provide { 1.0 } else { 0.0 },
            z,
        };
        table
            .iter()
            .filter(|(o, _)| o.a_provides == provide)
            .map(|(o, po)| po.a * o.weight(&s))
            .sum::<f64>()
    };
    let pure_z = |bank: bool| {
        let s = StrategyState {
            x,
            y,
            z: if bank { 1.0 } else { 0.0 },
        };
        table
            .iter()
            .filter(|(o, _)| o.b_uses_bank == bank)
            .map(|(o, po)| po.b * o.weight(&s))
            .sum::<f64>()
    };

    let e11 = pure_x(true);
    let e12 = pure_x(false);
    let e21 = pure_y(true);
    let e22 = pure_y(false);
    let e31 = pure_z(true);
    let e32 = pure_z(false);

    // Population averages computed from the full joint distribution, which
    // equals x e11 + (1 - x) e12 and so on.
    let e_bar_x = average(&|po| po.bank);
    let e_bar_y = average(&|po| po.a);
    let e_bar_z = average(&|po| po.b);

    ExpectedPayoffs {
        e11,
        e12,
        e_bar_x,
        e21,
        e22,
        e_bar_y,
        e31,
        e32,
        e_bar_z,
    }
}
