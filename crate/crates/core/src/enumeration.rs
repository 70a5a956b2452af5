//! Deterministic partition streams.
//!
//! Two routes produce the classes `O_{j,r}(n)` and `D_{j,r}(n)`:
//! [`enumerate_class_filtered`] filters the full stream of partitions of `n`,
//! and [`enumerate_class`] generates members directly by backtracking over
//! part values with the class constraint applied at every branch. Both emit
//! in decreasing lexicographic order of the part sequence.

use serde::{Deserialize, Serialize};

use crate::error::{check_modulus, Error, Result};
use crate::partition::Partition;

/// Largest size any enumeration accepts unless a caller opts into a
/// different limit.
pub const DEFAULT_MAX_N: u64 = 120;

pub(crate) fn check_bound(n: u64, limit: u64) -> Result<()> {
    if n > limit {
        Err(Error::BoundExceeded { n, limit })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// Different parts divisible by `r`.
    O,
    /// Different parts repeated at least `r` times.
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    AtMost,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassSpec {
    pub family: Family,
    pub r: u64,
    pub j: u64,
    pub mode: Mode,
}

impl ClassSpec {
    pub fn new(family: Family, r: u64, j: u64, mode: Mode) -> Result<Self> {
        check_modulus(r)?;
        Ok(Self { family, r, j, mode })
    }

    pub fn exact(family: Family, r: u64, j: u64) -> Result<Self> {
        Self::new(family, r, j, Mode::Exact)
    }

    pub fn at_most(family: Family, r: u64, j: u64) -> Result<Self> {
        Self::new(family, r, j, Mode::AtMost)
    }

    /// Membership test straight from the class definition.
    pub fn contains(&self, lambda: &Partition) -> bool {
        let c = lambda.classify_unchecked(self.r);
        let index = match self.family {
            Family::O => c.j_div,
            Family::D => c.j_rep,
        } as u64;
        match self.mode {
            Mode::Exact => index == self.j,
            Mode::AtMost => index <= self.j,
        }
    }
}

/// All partitions of `n` in decreasing lexicographic order, `(n)` first and
/// `(1^n)` last.
#[derive(Debug, Clone)]
pub struct PartitionsOf {
    current: Partition,
    n: u64,
    started: bool,
    done: bool,
}

pub fn partitions_of(n: u64) -> Result<PartitionsOf> {
    PartitionsOf::with_limit(n, DEFAULT_MAX_N)
}

impl PartitionsOf {
    pub fn with_limit(n: u64, limit: u64) -> Result<Self> {
        check_bound(n, limit)?;
        Ok(Self { current: Partition::empty(), n, started: false, done: false })
    }

    /// Steps to the next partition and lends it without cloning.
    pub fn advance(&mut self) -> Option<&Partition> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.current = Partition::rectangle(self.n, u64::from(self.n > 0));
            return Some(&self.current);
        }
        let mut pairs = std::mem::take(&mut self.current).into_pairs();
        if !step_reverse_lex(&mut pairs) {
            self.done = true;
            return None;
        }
        self.current = Partition::from_canonical(pairs);
        Some(&self.current)
    }
}

impl Iterator for PartitionsOf {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        self.advance().cloned()
    }
}

/// Replaces `pairs` by its successor in decreasing lexicographic order.
/// Returns false once `pairs` was the all-ones (or empty) partition.
fn step_reverse_lex(pairs: &mut Vec<(u64, u64)>) -> bool {
    let Some(&(last, last_mult)) = pairs.last() else {
        return false;
    };
    let mut spill = 0;
    if last == 1 {
        pairs.pop();
        spill = last_mult;
    }
    let Some(&(rho, mult)) = pairs.last() else {
        return false;
    };
    if mult == 1 {
        pairs.pop();
    } else {
        pairs.last_mut().unwrap().1 = mult - 1;
    }
    spill += rho;
    let fill = rho - 1;
    pairs.push((fill, spill / fill));
    if spill % fill > 0 {
        pairs.push((spill % fill, 1));
    }
    true
}

/// Constraint driving [`Constrained`] generation and [`count_with_rule`].
///
/// A part value is "special" when it counts toward the class index `j`
/// (a multiple of `r` for the `O` family, a part with multiplicity at least
/// `r` for the `D` family).
pub trait PartRule {
    fn allows(&self, part: u64) -> bool;

    fn is_special(&self, part: u64, mult: u64) -> bool;

    /// Lower bound on the size needed to place `need` more special parts,
    /// all with values at most `max_part`. `None` means impossible.
    fn completion_cost(&self, _need: u64, _max_part: u64) -> Option<u64> {
        Some(1)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ClassRule {
    pub family: Family,
    pub r: u64,
}

impl PartRule for ClassRule {
    fn allows(&self, _part: u64) -> bool {
        true
    }

    fn is_special(&self, part: u64, mult: u64) -> bool {
        match self.family {
            Family::O => part.is_multiple_of(self.r),
            Family::D => mult >= self.r,
        }
    }

    fn completion_cost(&self, need: u64, max_part: u64) -> Option<u64> {
        // cheapest choice: the `need` smallest admissible values, r copies
        // of each for D, one copy of each multiple of r for O
        let available = match self.family {
            Family::O => max_part / self.r,
            Family::D => max_part,
        };
        (available >= need).then(|| self.r * need * (need + 1) / 2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Fresh,
    Running,
    Done,
}

/// Backtracking generator for partitions of `n` obeying a [`PartRule`] with
/// exactly (or at most) `j` special parts.
#[derive(Debug, Clone)]
pub struct Constrained<R> {
    rule: R,
    n: u64,
    j: u64,
    mode: Mode,
    stack: Vec<(u64, u64)>,
    special: Vec<bool>,
    remaining: u64,
    count: u64,
    state: State,
}

impl<R: PartRule> Constrained<R> {
    pub fn new(rule: R, n: u64, j: u64, mode: Mode) -> Self {
        Self { rule, n, j, mode, stack: Vec::new(), special: Vec::new(), remaining: n, count: 0, state: State::Fresh }
    }

    fn max_part(&self) -> u64 {
        self.stack.last().map_or(self.n, |&(p, _)| p - 1)
    }

    fn find_choice(&self, start_part: u64, start_mult: Option<u64>) -> Option<(u64, u64, bool)> {
        let mut part = start_part;
        let mut mult_cap = start_mult;
        while part >= 1 {
            if self.rule.allows(part) {
                let most = self.remaining / part;
                let mut mult = mult_cap.map_or(most, |c| c.min(most));
                while mult >= 1 {
                    let special = self.rule.is_special(part, mult);
                    let count = self.count + u64::from(special);
                    if count <= self.j && self.feasible(count, part, mult) {
                        return Some((part, mult, special));
                    }
                    mult -= 1;
                }
            }
            part -= 1;
            mult_cap = None;
        }
        None
    }

    fn feasible(&self, count: u64, part: u64, mult: u64) -> bool {
        if self.mode == Mode::AtMost || count == self.j {
            return true;
        }
        let left = self.remaining - part * mult;
        match self.rule.completion_cost(self.j - count, part - 1) {
            Some(cost) => left > 0 && cost <= left,
            None => false,
        }
    }

    fn push(&mut self, (part, mult, special): (u64, u64, bool)) {
        self.stack.push((part, mult));
        self.special.push(special);
        self.remaining -= part * mult;
        self.count += u64::from(special);
    }

    /// Extends the stack greedily; true when it reaches an accepted leaf.
    fn descend(&mut self) -> bool {
        loop {
            if self.remaining == 0 {
                return match self.mode {
                    Mode::Exact => self.count == self.j,
                    Mode::AtMost => self.count <= self.j,
                };
            }
            let start = self.max_part().min(self.remaining);
            match self.find_choice(start, None) {
                Some(choice) => self.push(choice),
                None => return false,
            }
        }
    }

    fn emit(&self) -> Partition {
        Partition::from_canonical(self.stack.clone())
    }
}

impl<R: PartRule> Iterator for Constrained<R> {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        match self.state {
            State::Done => return None,
            State::Fresh => {
                self.state = State::Running;
                if self.descend() {
                    return Some(self.emit());
                }
            }
            State::Running => {}
        }
        loop {
            let Some((part, mult)) = self.stack.pop() else {
                self.state = State::Done;
                return None;
            };
            let special = self.special.pop().unwrap_or(false);
            self.remaining += part * mult;
            self.count -= u64::from(special);
            if let Some(choice) = self.find_choice(part, Some(mult - 1)) {
                self.push(choice);
                if self.descend() {
                    return Some(self.emit());
                }
            }
        }
    }
}

/// Direct constrained generation of a class.
pub fn enumerate_class(n: u64, spec: ClassSpec) -> Result<Constrained<ClassRule>> {
    check_modulus(spec.r)?;
    check_bound(n, DEFAULT_MAX_N)?;
    let rule = ClassRule { family: spec.family, r: spec.r };
    Ok(Constrained::new(rule, n, spec.j, spec.mode))
}

/// Filter of [`partitions_of`] by the class definition. Slow but trivially
/// correct; kept as the reference for [`enumerate_class`].
pub fn enumerate_class_filtered(n: u64, spec: ClassSpec) -> Result<impl Iterator<Item = Partition>> {
    check_modulus(spec.r)?;
    Ok(partitions_of(n)?.filter(move |lambda| spec.contains(lambda)))
}

/// Number of members of a class, computed by a knapsack over part values
/// rather than by walking the stream.
pub fn count_class(n: u64, spec: ClassSpec) -> Result<u64> {
    check_modulus(spec.r)?;
    check_bound(n, DEFAULT_MAX_N)?;
    let rule = ClassRule { family: spec.family, r: spec.r };
    Ok(count_with_rule(&rule, n, spec.j, spec.mode))
}

/// `p(n)` via the same knapsack with no constraint.
pub fn count_partitions(n: u64) -> Result<u64> {
    check_bound(n, DEFAULT_MAX_N)?;
    struct Any;
    impl PartRule for Any {
        fn allows(&self, _: u64) -> bool {
            true
        }
        fn is_special(&self, _: u64, _: u64) -> bool {
            false
        }
    }
    Ok(count_with_rule(&Any, n, 0, Mode::Exact))
}

/// Counts partitions of `n` under `rule` with exactly / at most `j` special
/// parts. Table `ways[c][s]`: partitions of `s` using the part values seen so
/// far, `c` of them special.
pub fn count_with_rule<R: PartRule + ?Sized>(rule: &R, n: u64, j: u64, mode: Mode) -> u64 {
    let n = n as usize;
    let levels = j as usize + 1;
    let mut ways = vec![vec![0u64; n + 1]; levels];
    ways[0][0] = 1;
    for part in 1..=n {
        if !rule.allows(part as u64) {
            continue;
        }
        let mut next = ways.clone();
        for (c, row) in ways.iter().enumerate() {
            for (s, &base) in row.iter().enumerate() {
                if base == 0 {
                    continue;
                }
                let mut mult = 1;
                while s + part * mult <= n {
                    let c2 = c + usize::from(rule.is_special(part as u64, mult as u64));
                    if c2 < levels {
                        let slot = &mut next[c2][s + part * mult];
                        *slot = slot.checked_add(base).expect("count overflow");
                    }
                    mult += 1;
                }
            }
        }
        ways = next;
    }
    match mode {
        Mode::Exact => ways[j as usize][n],
        Mode::AtMost => ways.iter().map(|row| row[n]).sum(),
    }
}

/// A pair of `j`-tuples `(m, k)`: the parts `m_i * r` with multiplicity
/// `k_i`. `m` is strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DivisibleTuple {
    pub m: Vec<u64>,
    pub k: Vec<u64>,
}

impl DivisibleTuple {
    /// Sorts by `m`; rejects mismatched lengths, zero entries and repeated `m`.
    pub fn new(m: Vec<u64>, k: Vec<u64>) -> Result<Self> {
        if m.len() != k.len() {
            return Err(Error::InvalidTuple(format!("m has {} entries but k has {}", m.len(), k.len())));
        }
        if m.iter().chain(&k).any(|&x| x == 0) {
            return Err(Error::InvalidTuple("entries must be positive".into()));
        }
        let mut zipped: Vec<(u64, u64)> = m.into_iter().zip(k).collect();
        zipped.sort_unstable();
        if zipped.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidTuple("m entries must be distinct".into()));
        }
        let (m, k) = zipped.into_iter().unzip();
        Ok(Self { m, k })
    }

    pub fn len(&self) -> usize {
        self.m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.m.is_empty()
    }

    /// `m . k`
    pub fn dot(&self) -> u64 {
        self.m.iter().zip(&self.k).map(|(a, b)| a * b).sum()
    }

    /// The partition `U_i (m_i * scale)^(k_i * repeat)`.
    pub fn block(&self, scale: u64, repeat: u64) -> Partition {
        Partition::from_pairs(self.m.iter().zip(&self.k).map(|(&m, &k)| (m * scale, k * repeat)))
            .expect("tuple entries are positive")
    }
}

/// Every `(m, k)` of length `j` with `r * (m . k) <= n`, in lexicographic
/// order of `(m, k)`.
pub fn divisible_tuples(n: u64, r: u64, j: usize) -> Result<Vec<DivisibleTuple>> {
    check_modulus(r)?;
    let budget = n / r;
    let mut out = Vec::new();
    let mut m = Vec::with_capacity(j);
    let mut k = Vec::with_capacity(j);
    fn walk(j: usize, min_m: u64, budget: u64, m: &mut Vec<u64>, k: &mut Vec<u64>, out: &mut Vec<DivisibleTuple>) {
        if m.len() == j {
            out.push(DivisibleTuple { m: m.clone(), k: k.clone() });
            return;
        }
        let slots_left = (j - m.len()) as u64;
        // the remaining slots need at least min_m + (min_m+1) + ... units
        let mut next_m = min_m;
        loop {
            let floor_cost = slots_left * next_m + slots_left * (slots_left - 1) / 2;
            if floor_cost > budget {
                break;
            }
            let mut mult = 1;
            while next_m * mult <= budget {
                let rest = budget - next_m * mult;
                let later = slots_left - 1;
                if later * (next_m + 1) + later * later.saturating_sub(1) / 2 > rest {
                    break;
                }
                m.push(next_m);
                k.push(mult);
                walk(j, next_m + 1, rest, m, k, out);
                m.pop();
                k.pop();
                mult += 1;
            }
            next_m += 1;
        }
    }
    walk(j, 1, budget, &mut m, &mut k, &mut out);
    Ok(out)
}

/// Members of `O^{m,k}_{j,r}(n)`: the parts divisible by `r` are exactly
/// `(m_i r)^{k_i}`.
#[derive(Debug, Clone)]
pub struct FixedDivisible {
    rest: Option<Constrained<ClassRule>>,
    fixed: Partition,
}

impl Iterator for FixedDivisible {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        self.rest.as_mut()?.next().map(|p| p.union(&self.fixed))
    }
}

pub fn enumerate_fixed_divisible(n: u64, r: u64, tuple: &DivisibleTuple) -> Result<FixedDivisible> {
    check_modulus(r)?;
    check_bound(n, DEFAULT_MAX_N)?;
    let used = r * tuple.dot();
    let rest = (used <= n).then(|| Constrained::new(ClassRule { family: Family::O, r }, n - used, 0, Mode::Exact));
    Ok(FixedDivisible { rest, fixed: tuple.block(r, 1) })
}
