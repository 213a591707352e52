//! Reduction modulo relations of the form `var^k = rhs`.

use std::fmt;

use super::poly::{Monomial, MultiPoly, Var};
use super::IdentityError;

/// The oriented substitution `head^power → rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    head: Var,
    power: u32,
    rhs: MultiPoly,
}

impl Rule {
    pub fn new(head: Var, power: u32, rhs: MultiPoly) -> Result<Self, IdentityError> {
        if power == 0 {
            return Err(IdentityError::ZeroPower(head));
        }
        if rhs.degree_in(head) >= power {
            return Err(IdentityError::NonDecreasing(head));
        }
        Ok(Self { head, power, rhs })
    }

    pub fn head(&self) -> Var {
        self.head
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn rhs(&self) -> &MultiPoly {
        &self.rhs
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", Monomial::var(self.head, self.power), self.rhs)
    }
}

/// A set of rules with distinct heads, none of which occurs on any right-hand
/// side. Normal forms are therefore unique and reduction terminates.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RewriteSystem {
    rules: Vec<Rule>,
}

fn m(pairs: &[(Var, u32)]) -> MultiPoly {
    MultiPoly::monomial(Monomial::from_pairs(pairs))
}

impl RewriteSystem {
    pub fn new(rules: Vec<Rule>) -> Result<Self, IdentityError> {
        for (i, r) in rules.iter().enumerate() {
            if rules[..i].iter().any(|o| o.head == r.head) {
                return Err(IdentityError::DuplicateHead(r.head));
            }
            if let Some(o) = rules.iter().find(|o| o.rhs.contains(r.head)) {
                return Err(IdentityError::HeadOnRightSide { head: r.head, rule: o.head });
            }
        }
        Ok(Self { rules })
    }

    /// s² → x1³f3 + x1⁶f6, the double plane.
    pub fn surface_rule() -> Rule {
        Rule::new(Var::S, 2, m(&[(Var::X1, 3), (Var::F3, 1)]) + m(&[(Var::X1, 6), (Var::F6, 1)])).expect("valid")
    }

    /// y⁶ → f3²f6, the sextic cover of the line.
    pub fn curve_rule() -> Rule {
        Rule::new(Var::Y, 6, m(&[(Var::F3, 2), (Var::F6, 1)])).expect("valid")
    }

    /// u² → v⁴ + v, the elliptic curve with j = 0.
    pub fn elliptic_rule() -> Rule {
        Rule::new(Var::U, 2, m(&[(Var::V, 4)]) + m(&[(Var::V, 1)])).expect("valid")
    }

    /// Surface and curve rules.
    pub fn standard() -> Self {
        Self::new(vec![Self::surface_rule(), Self::curve_rule()]).expect("valid")
    }

    /// Surface, curve and elliptic rules.
    pub fn full() -> Self {
        Self::new(vec![Self::surface_rule(), Self::curve_rule(), Self::elliptic_rule()]).expect("valid")
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// The same system without the rule whose head is `head`.
    pub fn without(&self, head: Var) -> Self {
        Self { rules: self.rules.iter().filter(|r| r.head != head).cloned().collect() }
    }

    /// Normal form: every head occurs with exponent below its power.
    pub fn reduce(&self, p: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        let mut work = vec![p.clone()];
        while let Some(q) = work.pop() {
            for (mono, c) in q.terms() {
                match self.rules.iter().find(|r| mono.exponent(r.head) >= r.power) {
                    None => out = out + MultiPoly::term(c.clone(), *mono),
                    Some(r) => {
                        let rest = mono.div(&Monomial::var(r.head, r.power)).expect("divisible");
                        work.push(r.rhs.mul_monomial(&rest).scale(c));
                    }
                }
            }
        }
        out
    }

    pub fn is_normal(&self, p: &MultiPoly) -> bool {
        self.rules.iter().all(|r| p.degree_in(r.head) < r.power)
    }
}

impl fmt::Display for RewriteSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rules.iter().map(Rule::to_string).collect();
        f.write_str(&parts.join(", "))
    }
}
