use std::time::Duration;

use thiserror::Error;

use crate::lift::CanonOptions;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("g_nbr = {g_nbr} exceeds g_min = {g_min}")]
    NeighborGirth { g_nbr: usize, g_min: usize },
    #[error("`{0}` must be positive")]
    NonPositive(&'static str),
}

/// Which cost drives tabu search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TabuMode {
    Girth,
    Regularity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub g_min: usize,
    /// Neighbor girth for tabu search; `None` picks `g_min - 2` in girth
    /// mode and `g_min` in regularity mode.
    pub g_nbr: Option<usize>,
    pub t_bta: Duration,
    pub t_ts: Duration,
    pub t_ts_init: Duration,
    pub t_hill: Duration,
    pub t_edge_autos: Duration,
    pub max_edge_autos: usize,
    pub max_group_autos: usize,
    pub tabu_len_factor: usize,
    pub penalty_c: f64,
    pub walk_samples_m: usize,
    /// Longest sampled walk, 0 for `2 * g_min`.
    pub walk_max_len: usize,
    pub stagnation_limit: usize,
    pub perturb_moves: usize,
    pub rng_seed: u64,
    pub canonicity: bool,
    pub edge_autos: bool,
    pub group_autos: bool,
    /// Reject non-canonical neighbors in tabu search.
    pub canon_filter_ts: bool,
    /// Iteration cap for tabu search, 0 for none.
    pub max_iterations: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            g_min: 5,
            g_nbr: None,
            t_bta: Duration::from_secs(20),
            t_ts: Duration::from_secs(20),
            t_ts_init: Duration::from_secs(2),
            t_hill: Duration::from_secs(20),
            t_edge_autos: Duration::from_secs(2),
            max_edge_autos: 200,
            max_group_autos: 2000,
            tabu_len_factor: 3,
            penalty_c: 1000.0,
            walk_samples_m: 500,
            walk_max_len: 0,
            stagnation_limit: 50,
            perturb_moves: 3,
            rng_seed: 0,
            canonicity: true,
            edge_autos: true,
            group_autos: true,
            canon_filter_ts: true,
            max_iterations: 0,
        }
    }
}

impl SearchConfig {
    pub fn with_girth(g_min: usize) -> Self {
        SearchConfig { g_min, ..Self::default() }
    }

    pub fn g_nbr(&self, mode: TabuMode) -> usize {
        self.g_nbr.unwrap_or(match mode {
            TabuMode::Girth => self.g_min.saturating_sub(2),
            TabuMode::Regularity => self.g_min,
        })
    }

    pub fn walk_max_len(&self) -> usize {
        if self.walk_max_len == 0 {
            2 * self.g_min
        } else {
            self.walk_max_len
        }
    }

    pub fn tabu_capacity(&self, group_order: usize) -> usize {
        self.tabu_len_factor * group_order
    }

    pub fn canon_options(&self) -> CanonOptions {
        CanonOptions {
            enabled: self.canonicity,
            edge_autos: self.edge_autos,
            group_autos: self.group_autos,
            max_edge_autos: self.max_edge_autos,
            max_group_autos: self.max_group_autos,
            edge_auto_budget: self.t_edge_autos,
        }
    }

    /// Applies `key=value` lines over the current values. `#` starts a
    /// comment; times are seconds.
    pub fn apply(&mut self, text: &str) -> Result<(), ConfigError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or(ConfigError::Parse { line: i + 1, msg: "expected key=value".into() })?;
            self.set(key.trim(), value.trim()).map_err(|e| match e {
                ConfigError::Parse { msg, .. } => ConfigError::Parse { line: i + 1, msg },
                other => other,
            })?;
        }
        self.validate()
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut c = Self::default();
        c.apply(text)?;
        Ok(c)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, ConfigError> {
            v.parse().map_err(|_| ConfigError::Parse { line: 0, msg: format!("bad value `{v}` for {key}") })
        }
        fn secs(key: &str, v: &str) -> Result<Duration, ConfigError> {
            let s: f64 = num(key, v)?;
            Duration::try_from_secs_f64(s).map_err(|_| ConfigError::Parse { line: 0, msg: format!("bad duration `{v}` for {key}") })
        }
        fn flag(key: &str, v: &str) -> Result<bool, ConfigError> {
            match v {
                "true" | "1" | "yes" | "on" => Ok(true),
                "false" | "0" | "no" | "off" => Ok(false),
                _ => Err(ConfigError::Parse { line: 0, msg: format!("bad flag `{v}` for {key}") }),
            }
        }
        match key {
            "g_min" => self.g_min = num(key, value)?,
            "g_nbr" => self.g_nbr = Some(num(key, value)?),
            "t_bta" => self.t_bta = secs(key, value)?,
            "t_ts" => self.t_ts = secs(key, value)?,
            "t_ts_init" => self.t_ts_init = secs(key, value)?,
            "t_hill" => self.t_hill = secs(key, value)?,
            "t_edge_autos" => self.t_edge_autos = secs(key, value)?,
            "max_edge_autos" => self.max_edge_autos = num(key, value)?,
            "max_group_autos" => self.max_group_autos = num(key, value)?,
            "tabu_len_factor" => self.tabu_len_factor = num(key, value)?,
            "penalty_c" => self.penalty_c = num(key, value)?,
            "walk_samples_m" => self.walk_samples_m = num(key, value)?,
            "walk_max_len" => self.walk_max_len = num(key, value)?,
            "stagnation_limit" => self.stagnation_limit = num(key, value)?,
            "perturb_moves" => self.perturb_moves = num(key, value)?,
            "rng_seed" => self.rng_seed = num(key, value)?,
            "canonicity" => self.canonicity = flag(key, value)?,
            "edge_autos" => self.edge_autos = flag(key, value)?,
            "group_autos" => self.group_autos = flag(key, value)?,
            "canon_filter_ts" => self.canon_filter_ts = flag(key, value)?,
            "max_iterations" => self.max_iterations = num(key, value)?,
            _ => return Err(ConfigError::UnknownKey(key.to_string())),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if let Some(g_nbr) = self.g_nbr {
            if g_nbr > self.g_min {
                return Err(ConfigError::NeighborGirth { g_nbr, g_min: self.g_min });
            }
        }
        let times = [
            ("t_bta", self.t_bta),
            ("t_ts", self.t_ts),
            ("t_ts_init", self.t_ts_init),
            ("t_hill", self.t_hill),
            ("t_edge_autos", self.t_edge_autos),
        ];
        for (name, t) in times {
            if t.is_zero() {
                return Err(ConfigError::NonPositive(name));
            }
        }
        let counts = [
            ("max_edge_autos", self.max_edge_autos),
            ("max_group_autos", self.max_group_autos),
            ("tabu_len_factor", self.tabu_len_factor),
        ];
        for (name, c) in counts {
            if c == 0 {
                return Err(ConfigError::NonPositive(name));
            }
        }
        if !(self.penalty_c > 0.0) {
            return Err(ConfigError::NonPositive("penalty_c"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = SearchConfig::with_girth(9);
        assert_eq!(c.g_nbr(TabuMode::Girth), 7);
        assert_eq!(c.g_nbr(TabuMode::Regularity), 9);
        assert_eq!(c.tabu_capacity(45), 135);
        assert_eq!((c.max_edge_autos, c.max_group_autos, c.walk_samples_m), (200, 2000, 500));
        assert_eq!(c.penalty_c, 1000.0);
        assert_eq!(c.t_ts_init, Duration::from_secs(2));
    }

    #[test]
    fn parse_and_validate() {
        let c = SearchConfig::parse("# tuned\ng_min = 8\ng_nbr=6\nt_bta=0.5\ncanonicity=off\n").unwrap();
        assert_eq!(c.g_min, 8);
        assert_eq!(c.g_nbr, Some(6));
        assert_eq!(c.t_bta, Duration::from_millis(500));
        assert!(!c.canonicity);
        assert!(matches!(SearchConfig::parse("g_min=5\ng_nbr=6"), Err(ConfigError::NeighborGirth { .. })));
        assert!(matches!(SearchConfig::parse("t_ts=0"), Err(ConfigError::NonPositive("t_ts"))));
        assert!(matches!(SearchConfig::parse("colour=red"), Err(ConfigError::UnknownKey(_))));
        assert!(matches!(SearchConfig::parse("g_min\n"), Err(ConfigError::Parse { line: 1, .. })));
        assert!(matches!(SearchConfig::parse("\ng_min=x\n"), Err(ConfigError::Parse { line: 2, .. })));
    }
}
