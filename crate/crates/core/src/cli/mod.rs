//! Batch runner behind the `pxp-floquet` binary.

pub mod config;
pub mod output;
pub mod run;

use serde::Serialize;

use crate::error::Error;

/// Environment variable giving the default worker count.
pub const THREADS_ENV: &str = "PXP_FLOQUET_THREADS";

pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_IO: i32 = 1;

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) => EXIT_CONFIG,
        Error::Io(_) | Error::Csv(_) | Error::Json(_) => EXIT_IO,
        _ => EXIT_NUMERICAL,
    }
}

/// Machine-readable error record, printed as one JSON line on stderr.
#[derive(Debug, Serialize)]
pub struct ErrorRecord {
    pub kind: &'static str,
    pub exit_code: i32,
    pub message: String,
}

impl From<&Error> for ErrorRecord {
    fn from(e: &Error) -> Self {
        let code = exit_code(e);
        let kind = match code {
            EXIT_CONFIG => "config",
            EXIT_NUMERICAL => "numerical",
            _ => "io",
        };
        ErrorRecord {
            kind,
            exit_code: code,
            message: e.to_string(),
        }
    }
}

/// Thread count: flag, then config, then the environment, then all cores.
pub fn resolve_threads(flag: Option<usize>, config: Option<usize>) -> usize {
    flag.or(config)
        .or_else(|| {
            std::env::var(THREADS_ENV)
                .ok()
                .and_then(|s| s.trim().parse().ok())
        })
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

extern "C" {
    fn openblas_set_num_threads(n: std::os::raw::c_int);
}

/// Pins BLAS to one thread so results do not depend on the worker count.
pub fn single_threaded_blas() {
    // SAFETY: plain setter exported by the linked OpenBLAS.
    unsafe { openblas_set_num_threads(1) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Config("x".into())), 2);
        assert_eq!(exit_code(&Error::NoConvergence("x".into())), 3);
        let r = ErrorRecord::from(&Error::Config("bad".into()));
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"kind":"config","exit_code":2,"message":"config error: bad"}"#
        );
    }

    #[test]
    fn flag_beats_config() {
        assert_eq!(resolve_threads(Some(3), Some(5)), 3);
        assert_eq!(resolve_threads(None, Some(5)), 5);
    }
}
