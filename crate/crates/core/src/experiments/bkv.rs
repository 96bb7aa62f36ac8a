use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use super::ExperimentError;
use crate::instance::BigraphInstance;

/// Environment variable naming an extra registry file.
pub const BKV_REGISTRY_ENV: &str = "BIGRAPH_BKV_REGISTRY";

const PUBLISHED: &str = "published";
const PUBLISHED_TABLE4: &str = "published (unit-weight best cover)";
const EXHAUSTIVE: &str = "exact (exhaustive search)";

/// `(key, bkv, provenance)`; keys are `<name>.cnfU` or `<name>.cnfW`.
const BUILTIN: &[(&str, f64, &str)] = &[
    ("s3_027_117.cnfU", 18.0, PUBLISHED),
    ("s3_045_330.cnfU", 30.0, PUBLISHED),
    ("s3_081_1080.cnfU", 61.0, PUBLISHED),
    ("s3_135_3015.cnfU", 103.0, PUBLISHED),
    ("s3_243_9801.cnfU", 198.0, PUBLISHED),
    ("s3_405_27270.cnfU", 335.0, PUBLISHED),
    ("s3_729_88452.cnfU", 617.0, PUBLISHED),
    ("scpb1.cnfU", 22.0, PUBLISHED_TABLE4),
    ("scpc1.cnfU", 44.0, PUBLISHED_TABLE4),
    ("scpd1.cnfU", 25.0, PUBLISHED_TABLE4),
    ("scpb1.cnfW", 69.0, PUBLISHED),
    ("scpc1.cnfW", 227.0, PUBLISHED),
    ("scpd1.cnfW", 60.0, PUBLISHED),
    ("scp41.cnfW", 429.0, PUBLISHED),
    ("scp42.cnfW", 512.0, PUBLISHED),
    ("scp43.cnfW", 516.0, PUBLISHED),
    ("scp44.cnfW", 494.0, PUBLISHED),
    ("scp45.cnfW", 512.0, PUBLISHED),
    ("scp46.cnfW", 560.0, PUBLISHED),
    ("scp47.cnfW", 430.0, PUBLISHED),
    ("scp48.cnfW", 492.0, PUBLISHED),
    ("scp49.cnfW", 641.0, PUBLISHED),
    ("scp51.cnfW", 253.0, PUBLISHED),
    ("scp61.cnfW", 138.0, PUBLISHED),
    ("scpa1.cnfW", 253.0, PUBLISHED),
    ("m100_50_10_10.cnfU", 8.0, PUBLISHED),
    ("m100_100_10_10.cnfU", 12.0, PUBLISHED),
    ("m100_100_10_15.cnfU", 10.0, PUBLISHED),
    ("m100_100_10_30.cnfU", 9.0, PUBLISHED),
    ("m100_100_30_30.cnfU", 6.0, PUBLISHED),
    ("m200_100_10_30.cnfU", 11.0, PUBLISHED),
    ("m200_100_30_50.cnfU", 6.0, PUBLISHED),
    ("chvatal_6_5.cnfW", 1.1, PUBLISHED),
    ("school_9_11__0.cnfU", 4.0, PUBLISHED),
    ("school_9_16.cnfU", 5.0, PUBLISHED),
    ("school_9_16.cnfW", 10.0, PUBLISHED),
    ("school_19_20.cnfU", 6.0, PUBLISHED),
    ("school_19_20.cnfW", 11.5, PUBLISHED),
    ("school_19_20_1.cnfW", 3.833, PUBLISHED),
    ("school_19_20_5.cnfW", 16.1, PUBLISHED),
    ("chvatal_19_18.cnfW", 0.5, PUBLISHED),
    ("school_5_5_ref.cnfU", 2.0, PUBLISHED),
    ("school_5_5_iso.cnfU", 2.0, PUBLISHED),
    ("twin_2_2.cnfU", 1.0, EXHAUSTIVE),
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BkvEntry {
    pub value: f64,
    pub provenance: String,
}

/// Best-known values of the minimum cover, keyed by `<name>.<cnfU|cnfW>`.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct BkvRegistry {
    entries: BTreeMap<String, BkvEntry>,
}

impl BkvRegistry {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Preloaded with every published value this crate knows about.
    pub fn builtin() -> Self {
        let mut reg = Self::empty();
        for &(key, value, prov) in BUILTIN {
            reg.entries.insert(
                key.to_string(),
                BkvEntry {
                    value,
                    provenance: prov.to_string(),
                },
            );
        }
        reg
    }

    /// Builtin values, extended or overridden by the file named in
    /// [`BKV_REGISTRY_ENV`] when set.
    pub fn from_env() -> Result<Self, ExperimentError> {
        let mut reg = Self::builtin();
        if let Some(path) = std::env::var_os(BKV_REGISTRY_ENV) {
            reg.merge_file(Path::new(&path))?;
        }
        Ok(reg)
    }

    pub fn insert(
        &mut self,
        key: impl Into<String>,
        value: f64,
        provenance: impl Into<String>,
    ) -> Result<(), ExperimentError> {
        if !(value > 0.0 && value.is_finite()) {
            return Err(ExperimentError::NonPositiveBkv(value));
        }
        self.entries.insert(
            key.into(),
            BkvEntry {
                value,
                provenance: provenance.into(),
            },
        );
        Ok(())
    }

    /// Lines of `key,value[,provenance]`; blank lines and `#` comments ignored.
    pub fn merge_text(&mut self, text: &str) -> Result<(), ExperimentError> {
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.splitn(3, ',').map(str::trim);
            let bad = || ExperimentError::Registry(format!("line {}: `{line}`", i + 1));
            let key = parts.next().filter(|k| !k.is_empty()).ok_or_else(bad)?;
            let value: f64 = parts.next().and_then(|v| v.parse().ok()).ok_or_else(bad)?;
            let prov = parts.next().unwrap_or("user registry");
            self.insert(key, value, prov)?;
        }
        Ok(())
    }

    pub fn merge_file(&mut self, path: &Path) -> Result<(), ExperimentError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ExperimentError::Registry(format!("{}: {e}", path.display())))?;
        self.merge_text(&text)
    }

    pub fn get(&self, key: &str) -> Option<&BkvEntry> {
        self.entries.get(key)
    }

    pub fn lookup(&self, instance: &BigraphInstance) -> Option<f64> {
        self.get(&instance.registry_key()).map(|e| e.value)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &BkvEntry)> {
        self.entries.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;

    #[test]
    fn builtin_contents() {
        let reg = BkvRegistry::builtin();
        assert!(reg.iter().all(|(_, e)| e.value > 0.0));
        assert_eq!(reg.get("scpb1.cnfU").unwrap().value, 22.0);
        assert_eq!(reg.get("scpb1.cnfW").unwrap().value, 69.0);
        assert_eq!(reg.lookup(&data::builtin("chvatal_6_5").unwrap()), Some(1.1));
        assert_eq!(reg.lookup(&data::builtin("school_9_11__0").unwrap()), Some(4.0));
        assert_eq!(reg.len(), BUILTIN.len());
    }

    #[test]
    fn merge_overrides_and_validates() {
        let mut reg = BkvRegistry::builtin();
        reg.merge_text("# comment\n\nscpb1.cnfU, 21, my run\nnew.cnfW,3.5\n").unwrap();
        assert_eq!(reg.get("scpb1.cnfU").unwrap().value, 21.0);
        assert_eq!(reg.get("scpb1.cnfU").unwrap().provenance, "my run");
        assert_eq!(reg.get("new.cnfW").unwrap().provenance, "user registry");
        assert!(matches!(reg.merge_text("x,0"), Err(ExperimentError::NonPositiveBkv(_))));
        assert!(matches!(reg.merge_text("x"), Err(ExperimentError::Registry(_))));
        assert!(matches!(reg.merge_text("x,abc"), Err(ExperimentError::Registry(_))));
    }

    #[test]
    fn merge_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bkv.csv");
        std::fs::write(&path, "foo.cnfU,7\n").unwrap();
        let mut reg = BkvRegistry::empty();
        reg.merge_file(&path).unwrap();
        assert_eq!(reg.get("foo.cnfU").unwrap().value, 7.0);
        assert!(reg.merge_file(&dir.path().join("missing")).is_err());
    }
}
