use clap::Args;
use tribsum_core::{catalog, Error, Rational, RecurrenceParams, SequenceDef};

fn rational(s: &str) -> Result<Rational, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A catalog key or a full parameter set.
#[derive(Args, Clone, Debug)]
pub struct SequenceArgs {
    /// Catalog key, e.g. `tribonacci` (see `tribsum catalog`)
    #[arg(long, conflicts_with_all = ["r", "s", "t", "w0", "w1", "w2"])]
    pub seq: Option<String>,
    /// Coefficient r, as `p` or `p/q`
    #[arg(long, allow_hyphen_values = true, value_parser = rational)]
    pub r: Option<Rational>,
    /// Coefficient s
    #[arg(long, allow_hyphen_values = true, value_parser = rational)]
    pub s: Option<Rational>,
    /// Coefficient t
    #[arg(long, allow_hyphen_values = true, value_parser = rational)]
    pub t: Option<Rational>,
    /// Initial term W_0
    #[arg(long, allow_hyphen_values = true, value_parser = rational)]
    pub w0: Option<Rational>,
    /// Initial term W_1
    #[arg(long, allow_hyphen_values = true, value_parser = rational)]
    pub w1: Option<Rational>,
    /// Initial term W_2
    #[arg(long, allow_hyphen_values = true, value_parser = rational)]
    pub w2: Option<Rational>,
}

impl SequenceArgs {
    /// Falls back to `default` when neither `--seq` nor any parameter is given.
    pub fn resolve_or(&self, default: Option<&str>) -> Result<SequenceDef, String> {
        if let Some(key) = self
            .seq
            .as_deref()
            .or(default)
            .filter(|_| !self.any_param())
        {
            return catalog::lookup(key)
                .map(|e| e.def.clone())
                .map_err(|e| e.to_string());
        }
        let fields = [
            ("--r", &self.r),
            ("--s", &self.s),
            ("--t", &self.t),
            ("--w0", &self.w0),
            ("--w1", &self.w1),
            ("--w2", &self.w2),
        ];
        let missing: Vec<&str> = fields
            .iter()
            .filter(|(_, v)| v.is_none())
            .map(|(flag, _)| *flag)
            .collect();
        if !missing.is_empty() {
            return Err(format!(
                "give --seq or all of --r --s --t --w0 --w1 --w2 (missing {})",
                missing.join(" ")
            ));
        }
        let [r, s, t, w0, w1, w2] = fields.map(|(_, v)| v.clone().expect("checked above"));
        Ok(SequenceDef::new(
            RecurrenceParams::new(r, s, t),
            [w0, w1, w2],
        ))
    }

    pub fn resolve(&self) -> Result<SequenceDef, String> {
        self.resolve_or(None)
    }

    fn any_param(&self) -> bool {
        [&self.r, &self.s, &self.t, &self.w0, &self.w1, &self.w2]
            .iter()
            .any(|v| v.is_some())
    }
}
