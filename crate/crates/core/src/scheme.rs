use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::seqgen::SequenceFamily;

/// A signaling scheme under comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Sts,
    Walsh,
    Gold,
    #[serde(rename = "zc")]
    ZadoffChu,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [Scheme::Sts, Scheme::Walsh, Scheme::Gold, Scheme::ZadoffChu];
    pub const BASELINES: [Scheme; 3] = [Scheme::Walsh, Scheme::Gold, Scheme::ZadoffChu];

    pub fn family(self) -> Option<SequenceFamily> {
        match self {
            Scheme::Sts => None,
            Scheme::Walsh => Some(SequenceFamily::Walsh),
            Scheme::Gold => Some(SequenceFamily::Gold),
            Scheme::ZadoffChu => Some(SequenceFamily::ZadoffChu),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Sts => "sts",
            Scheme::Walsh => "walsh",
            Scheme::Gold => "gold",
            Scheme::ZadoffChu => "zc",
        }
    }

    /// Stable small integer used when deriving per-trial seeds.
    pub fn id(self) -> u8 {
        self as u8
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "sts" => Ok(Scheme::Sts),
            "walsh" => Ok(Scheme::Walsh),
            "gold" => Ok(Scheme::Gold),
            "zc" | "zadoff-chu" | "zadoffchu" => Ok(Scheme::ZadoffChu),
            other => Err(Error::Config(format!("unknown scheme `{other}`"))),
        }
    }
}
