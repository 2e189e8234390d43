use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

/// Wall-clock budget polled at search-node granularity. Clones share the
/// exhausted flag so one worker running out stops the others.
#[derive(Clone, Debug)]
pub struct Budget {
    deadline: Option<Instant>,
    hit: Arc<AtomicBool>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None, hit: Arc::new(AtomicBool::new(false)) }
    }

    pub fn millis(ms: u64) -> Self {
        Budget {
            deadline: Some(Instant::now() + Duration::from_millis(ms)),
            hit: Arc::new(AtomicBool::new(false)),
        }
    }

    pub fn from_option(ms: Option<u64>) -> Self {
        ms.map_or_else(Budget::unlimited, Budget::millis)
    }

    /// True once the deadline has passed.
    pub fn exhausted(&self) -> bool {
        if self.hit.load(Ordering::Relaxed) {
            return true;
        }
        match self.deadline {
            Some(d) if Instant::now() >= d => {
                self.hit.store(true, Ordering::Relaxed);
                true
            }
            _ => false,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::unlimited()
    }
}
