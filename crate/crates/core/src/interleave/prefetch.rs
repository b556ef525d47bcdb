use std::fmt;
use std::str::FromStr;

/// Cache level a prefetch hint targets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum PrefetchLevel {
    /// Hints are not issued.
    Off,
    /// Into L1 and all outer levels.
    #[default]
    L1,
    L2,
    L3,
    /// Minimize cache pollution.
    NonTemporal,
}

impl PrefetchLevel {
    pub fn name(self) -> &'static str {
        match self {
            Self::Off => "off",
            Self::L1 => "l1",
            Self::L2 => "l2",
            Self::L3 => "l3",
            Self::NonTemporal => "nta",
        }
    }
}

impl fmt::Display for PrefetchLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PrefetchLevel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "off" | "none" => Ok(Self::Off),
            "l1" | "t0" => Ok(Self::L1),
            "l2" | "t1" => Ok(Self::L2),
            "l3" | "t2" => Ok(Self::L3),
            "nta" | "non-temporal" | "nontemporal" => Ok(Self::NonTemporal),
            _ => Err(format!("unknown prefetch level `{s}` (expected off, l1, l2, l3 or nta)")),
        }
    }
}

/// Hints that the cache line holding `value` will be read soon. Never
/// changes program results.
#[inline(always)]
pub fn prefetch<T>(level: PrefetchLevel, value: &T) {
    #[cfg(target_arch = "x86_64")]
    {
        use std::arch::x86_64::{_mm_prefetch, _MM_HINT_NTA, _MM_HINT_T0, _MM_HINT_T1, _MM_HINT_T2};
        let p = value as *const T as *const i8;
        // SAFETY: prefetch is a hint and never faults; `p` comes from a live reference.
        #[allow(unused_unsafe)]
        unsafe {
            match level {
                PrefetchLevel::Off => {}
                PrefetchLevel::L1 => _mm_prefetch::<_MM_HINT_T0>(p),
                PrefetchLevel::L2 => _mm_prefetch::<_MM_HINT_T1>(p),
                PrefetchLevel::L3 => _mm_prefetch::<_MM_HINT_T2>(p),
                PrefetchLevel::NonTemporal => _mm_prefetch::<_MM_HINT_NTA>(p),
            }
        }
    }
    #[cfg(not(target_arch = "x86_64"))]
    {
        let _ = (level, value);
    }
}
