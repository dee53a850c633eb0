use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::rational::{rat, Rational};

/// The three irreducible modules of the Ising vertex algebra, by highest weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModuleLabel {
    H0,
    HHalf,
    HSixteenth,
}

impl ModuleLabel {
    pub const ALL: [ModuleLabel; 3] = [ModuleLabel::H0, ModuleLabel::HHalf, ModuleLabel::HSixteenth];

    pub fn highest_weight(self) -> Rational {
        match self {
            ModuleLabel::H0 => rat(0, 1),
            ModuleLabel::HHalf => rat(1, 2),
            ModuleLabel::HSixteenth => rat(1, 16),
        }
    }

    /// Highest weight in sixteenths, the unit used for q-offsets.
    pub fn offset_sixteenths(self) -> i64 {
        match self {
            ModuleLabel::H0 => 0,
            ModuleLabel::HHalf => 8,
            ModuleLabel::HSixteenth => 1,
        }
    }

    /// Smallest weight bound that reaches every exceptional pivot of the module.
    pub fn default_max_weight(self) -> u32 {
        match self {
            ModuleLabel::H0 | ModuleLabel::HHalf => 15,
            ModuleLabel::HSixteenth => 25,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ModuleLabel::H0 => "h0",
            ModuleLabel::HHalf => "h1/2",
            ModuleLabel::HSixteenth => "h1/16",
        }
    }
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModuleLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "h0" | "0" => Ok(ModuleLabel::H0),
            "h1/2" | "1/2" => Ok(ModuleLabel::HHalf),
            "h1/16" | "1/16" => Ok(ModuleLabel::HSixteenth),
            other => Err(Error::UnknownModule(other.to_string())),
        }
    }
}

impl Serialize for ModuleLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}
