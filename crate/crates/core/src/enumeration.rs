//! Exhaustive generation and counting of each family by pruned depth-first
//! search.
//!
//! Every family is described by a set of local rules (forbidden successor
//! pairs, a fixed-point budget, an optional pinned position) that are checked
//! as each digit is placed, so rejected prefixes are never extended. Listing
//! walks the pruned tree directly. Counting walks the same tree but memoizes
//! subtrees on `(used digits, last digit, auxiliary state)`, which is the
//! whole state the rules depend on.
//!
//! Work is split on the leading digit and merged in leading-digit order, so
//! results do not depend on the worker count.

use std::collections::HashMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::{Arrangement, Family};

pub const DEFAULT_LIST_CAP: usize = 10;
pub const DEFAULT_COUNT_CAP: usize = 13;
/// Caps above these are rejected regardless of configuration.
pub const LIST_CAP_LIMIT: usize = 16;
pub const COUNT_CAP_LIMIT: usize = 24;

pub const THREADS_ENV: &str = "SUCC_LAB_THREADS";
pub const CAP_ENV: &str = "SUCC_LAB_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    List,
    Count,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("n = {n} exceeds the {mode:?} cap of {cap}")]
    CapExceeded { n: usize, cap: usize, mode: Mode },
    #[error("fixed={k} is impossible for n = {n}")]
    FixedOutOfRange { k: usize, n: usize },
    #[error("position {position} is outside 1..={n}")]
    PositionOutOfRange { position: usize, n: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
}

/// Caps and worker count for enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumConfig {
    pub list_cap: usize,
    pub count_cap: usize,
    pub workers: usize,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            list_cap: DEFAULT_LIST_CAP,
            count_cap: DEFAULT_COUNT_CAP,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl EnumConfig {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_caps(mut self, list_cap: usize, count_cap: usize) -> Result<Self, EnumError> {
        if list_cap > LIST_CAP_LIMIT {
            return Err(EnumError::Config(format!(
                "list cap {list_cap} above limit {LIST_CAP_LIMIT}"
            )));
        }
        if count_cap > COUNT_CAP_LIMIT {
            return Err(EnumError::Config(format!(
                "count cap {count_cap} above limit {COUNT_CAP_LIMIT}"
            )));
        }
        self.list_cap = list_cap;
        self.count_cap = count_cap;
        Ok(self)
    }

    /// Defaults overridden by `SUCC_LAB_THREADS` and `SUCC_LAB_CAP`.
    ///
    /// `SUCC_LAB_CAP` is either `COUNT` (list cap left at its default unless
    /// it would exceed `COUNT`) or `LIST,COUNT`.
    pub fn from_env() -> Result<Self, EnumError> {
        Self::from_vars(
            std::env::var(THREADS_ENV).ok().as_deref(),
            std::env::var(CAP_ENV).ok().as_deref(),
        )
    }

    pub fn from_vars(threads: Option<&str>, cap: Option<&str>) -> Result<Self, EnumError> {
        let mut cfg = EnumConfig::default();
        let bad = |var: &str, v: &str| EnumError::Config(format!("{var}={v:?} is not valid"));
        if let Some(t) = threads {
            let w: usize = t.trim().parse().map_err(|_| bad(THREADS_ENV, t))?;
            cfg = cfg.with_workers(w);
        }
        if let Some(c) = cap {
            let parts: Vec<usize> = c
                .split(',')
                .map(|p| p.trim().parse())
                .collect::<Result<_, _>>()
                .map_err(|_| bad(CAP_ENV, c))?;
            cfg = match parts[..] {
                [count] => cfg.with_caps(cfg.list_cap.min(count), count)?,
                [list, count] => cfg.with_caps(list, count)?,
                _ => return Err(bad(CAP_ENV, c)),
            };
        }
        Ok(cfg)
    }

    fn check(&self, n: usize, mode: Mode) -> Result<(), EnumError> {
        let cap = match mode {
            Mode::List => self.list_cap,
            Mode::Count => self.count_cap,
        };
        if n > cap {
            Err(EnumError::CapExceeded { n, cap, mode })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationRequest {
    pub n: usize,
    pub family: Family,
    pub mode: Mode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnumerationOutput {
    List(Vec<Arrangement>),
    Count(BigUint),
}

impl EnumerationRequest {
    pub fn execute(&self, cfg: &EnumConfig) -> Result<EnumerationOutput, EnumError> {
        match self.mode {
            Mode::List => enumerate(self.n, self.family, cfg).map(EnumerationOutput::List),
            Mode::Count => count(self.n, self.family, cfg).map(EnumerationOutput::Count),
        }
    }
}

/// Members of `family` at size `n`, in increasing lexicographic order.
///
/// `{D_0}` is taken to be empty even though the empty word has no forbidden
/// pair; the same convention is used by [`count`].
pub fn enumerate(n: usize, family: Family, cfg: &EnumConfig) -> Result<Vec<Arrangement>, EnumError> {
    cfg.check(n, Mode::List)?;
    if n == 0 {
        let empty = empty_word_in(family)?.then(|| Arrangement::identity(0));
        return Ok(empty.into_iter().collect());
    }
    let Some(rules) = Rules::new(n, family, None)? else {
        return Ok(Vec::new());
    };
    let parts = fan_out(&rules, cfg, |rules, first| {
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(n);
        if let Some(state) = rules.place(State::root(), first) {
            word.push(first);
            list_from(rules, state, &mut word, &mut out);
        }
        out
    });
    Ok(parts.into_iter().flatten().collect())
}

/// `|family|` at size `n`, without materializing the set.
pub fn count(n: usize, family: Family, cfg: &EnumConfig) -> Result<BigUint, EnumError> {
    if n == 0 {
        cfg.check(n, Mode::Count)?;
        return Ok(BigUint::from(u8::from(empty_word_in(family)?)));
    }
    Ok(count_by_leading_digit(n, family, cfg)?.into_iter().sum())
}

fn empty_word_in(family: Family) -> Result<bool, EnumError> {
    Ok(Rules::new(0, family, None)?
        .is_some_and(|r| r.accepts_leaf(&State::root()) && r.fixed.is_none_or(|k| k == 0)))
}

/// Class sizes keyed by leading digit: entry `d - 1` counts members starting with `d`.
pub fn count_by_leading_digit(
    n: usize,
    family: Family,
    cfg: &EnumConfig,
) -> Result<Vec<BigUint>, EnumError> {
    cfg.check(n, Mode::Count)?;
    let Some(rules) = Rules::new(n, family, None)? else {
        return Ok(vec![BigUint::default(); n]);
    };
    if n == 0 {
        return Ok(Vec::new());
    }
    let parts = fan_out(&rules, cfg, |rules, first| {
        let mut memo = HashMap::new();
        rules
            .place(State::root(), first)
            .map_or(0, |s| count_from(rules, s, &mut memo))
    });
    Ok(parts.into_iter().map(BigUint::from).collect())
}

/// Number of members of `family` with `digit` at 1-indexed `position`.
pub fn count_pinned(
    n: usize,
    family: Family,
    position: usize,
    digit: u8,
    cfg: &EnumConfig,
) -> Result<BigUint, EnumError> {
    cfg.check(n, Mode::Count)?;
    if position == 0 || position > n {
        return Err(EnumError::PositionOutOfRange { position, n });
    }
    if digit == 0 || digit as usize > n {
        return Ok(BigUint::default());
    }
    let Some(rules) = Rules::new(n, family, Some((position, digit)))? else {
        return Ok(BigUint::default());
    };
    let parts = fan_out(&rules, cfg, |rules, first| {
        let mut memo = HashMap::new();
        rules
            .place(State::root(), first)
            .map_or(0, |s| count_from(rules, s, &mut memo))
    });
    Ok(parts.into_iter().map(BigUint::from).sum())
}

/// Local rules for one family at one size.
#[derive(Debug, Clone, Copy)]
struct Rules {
    n: usize,
    forbid_succession: bool,
    forbid_wrap: bool,
    require_wrap: bool,
    fixed: Option<usize>,
    pin: Option<(usize, u8)>,
}

#[derive(Debug, Clone, Copy)]
struct State {
    used: u64,
    depth: usize,
    last: u8,
    wrap_seen: bool,
    fixed: usize,
}

impl State {
    fn root() -> Self {
        State { used: 0, depth: 0, last: 0, wrap_seen: false, fixed: 0 }
    }
}

impl Rules {
    /// `None` when the family is empty by convention at this size.
    fn new(n: usize, family: Family, pin: Option<(usize, u8)>) -> Result<Option<Self>, EnumError> {
        let mut r = Rules {
            n,
            forbid_succession: false,
            forbid_wrap: false,
            require_wrap: false,
            fixed: None,
            pin,
        };
        match family {
            Family::All => {}
            Family::SmallD => r.forbid_succession = true,
            Family::BigD => {
                if n == 0 {
                    return Ok(None);
                }
                r.forbid_succession = true;
                r.forbid_wrap = true;
            }
            Family::Dn1 => {
                r.forbid_succession = true;
                r.require_wrap = true;
            }
            Family::Derangement => r.fixed = Some(0),
            Family::ExactFixed(k) => {
                if k > n {
                    return Err(EnumError::FixedOutOfRange { k, n });
                }
                r.fixed = Some(k);
            }
        }
        Ok(Some(r))
    }

    /// The state after appending `d`, or `None` if a rule rejects it.
    fn place(&self, s: State, d: u8) -> Option<State> {
        if s.used & (1 << d) != 0 {
            return None;
        }
        let pos = s.depth + 1;
        if let Some((pp, pd)) = self.pin {
            if (pos == pp) != (d == pd) {
                return None;
            }
        }
        if s.depth > 0 {
            if self.forbid_succession && d == s.last + 1 {
                return None;
            }
            if self.forbid_wrap && s.last as usize == self.n && d == 1 {
                return None;
            }
        }
        let fixed = s.fixed + usize::from(d as usize == pos);
        if let Some(k) = self.fixed {
            if fixed > k || fixed + (self.n - pos) < k {
                return None;
            }
        }
        Some(State {
            used: s.used | (1 << d),
            depth: pos,
            last: d,
            wrap_seen: s.wrap_seen || (s.depth > 0 && s.last as usize == self.n && d == 1),
            fixed,
        })
    }

    fn accepts_leaf(&self, s: &State) -> bool {
        !self.require_wrap || s.wrap_seen
    }

    fn memo_key(&self, s: &State) -> (u64, u8, u8) {
        let aux = if self.require_wrap {
            s.wrap_seen as u8
        } else if self.fixed.is_some() {
            s.fixed as u8
        } else {
            0
        };
        (s.used, s.last, aux)
    }
}

fn list_from(rules: &Rules, s: State, word: &mut Vec<u8>, out: &mut Vec<Arrangement>) {
    if s.depth == rules.n {
        if rules.accepts_leaf(&s) {
            out.push(Arrangement::from_trusted(word.clone()));
        }
        return;
    }
    for d in 1..=rules.n as u8 {
        if let Some(next) = rules.place(s, d) {
            word.push(d);
            list_from(rules, next, word, out);
            word.pop();
        }
    }
}

fn count_from(rules: &Rules, s: State, memo: &mut HashMap<(u64, u8, u8), u128>) -> u128 {
    if s.depth == rules.n {
        return u128::from(rules.accepts_leaf(&s));
    }
    let key = rules.memo_key(&s);
    if let Some(&c) = memo.get(&key) {
        return c;
    }
    let c = (1..=rules.n as u8)
        .filter_map(|d| rules.place(s, d))
        .map(|next| count_from(rules, next, memo))
        .sum();
    memo.insert(key, c);
    c
}

/// Runs `job` once per leading digit `1..=n` and returns results in digit order.
fn fan_out<T, F>(rules: &Rules, cfg: &EnumConfig, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(&Rules, u8) -> T + Sync,
{
    let firsts: Vec<u8> = (1..=rules.n as u8).collect();
    #[cfg(feature = "parallel")]
    if cfg.workers > 1 && firsts.len() > 1 {
        use rayon::prelude::*;
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(cfg.workers).build() {
            return pool.install(|| firsts.par_iter().map(|&d| job(rules, d)).collect());
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = cfg;
    firsts.iter().map(|&d| job(rules, d)).collect()
}
