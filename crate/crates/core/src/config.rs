//! Run-time knobs read from the environment.

/// Environment variable overriding every dyadic refinement cap (in bits).
pub const PRECISION_CAP_ENV: &str = "POLYCERT_PRECISION_CAP";

/// Returns the precision cap to use, honoring `POLYCERT_PRECISION_CAP` when set
/// to a positive integer.
pub fn precision_cap(default_bits: u64) -> u64 {
    match std::env::var(PRECISION_CAP_ENV) {
        Ok(v) => match v.trim().parse::<u64>() {
            Ok(bits) if bits > 0 => bits,
            _ => {
                log::warn!("ignoring malformed {PRECISION_CAP_ENV}={v:?}");
                default_bits
            }
        },
        Err(_) => default_bits,
    }
}
