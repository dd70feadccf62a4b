// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Cooperative cancellation for the cut set engines.

use std::cell::Cell;
use std::time::{Duration, Instant};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("computation exceeded its budget")]
    Interrupted,
    #[error("universe of {0} elements is too large for exhaustive search (limit 127)")]
    UniverseTooLarge(usize),
}

/// How often (in steps) the wall clock is consulted.
const CLOCK_STRIDE: u64 = 256;

/// A step counter with an optional deadline and step cap. Engines call
/// [`Budget::tick`] in their inner loops and bail out with
/// [`EngineError::Interrupted`] once either limit is hit.
#[derive(Debug)]
pub struct Budget {
    deadline: Option<Instant>,
    max_steps: Option<u64>,
    steps: Cell<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            deadline: None,
            max_steps: None,
            steps: Cell::new(0),
        }
    }

    pub fn with_timeout(timeout: Duration) -> Self {
        Budget {
            deadline: Some(Instant::now() + timeout),
            ..Budget::unlimited()
        }
    }

    pub fn with_steps(max_steps: u64) -> Self {
        Budget {
            max_steps: Some(max_steps),
            ..Budget::unlimited()
        }
    }

    pub fn steps(&self) -> u64 {
        self.steps.get()
    }

    #[inline]
    pub fn tick(&self) -> Result<(), EngineError> {
        let n = self.steps.get() + 1;
        self.steps.set(n);
        if let Some(max) = self.max_steps {
            if n > max {
                return Err(EngineError::Interrupted);
            }
        }
        if n.is_multiple_of(CLOCK_STRIDE) {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    return Err(EngineError::Interrupted);
                }
            }
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::unlimited()
    }
}
