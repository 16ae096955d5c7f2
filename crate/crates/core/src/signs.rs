//! Switchable sign sites, used by the mutation-sensitivity checks.
//!
//! Each site names one Koszul sign in a differential. Flipping a site is
//! thread-local and scoped to a closure, so normal callers never see it.

use std::cell::Cell;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignSite {
    TensorDifferential,
    HomDifferential,
    ConeDifferential,
    TotalDifferential,
}

impl SignSite {
    pub const ALL: [SignSite; 4] = [
        SignSite::TensorDifferential,
        SignSite::HomDifferential,
        SignSite::ConeDifferential,
        SignSite::TotalDifferential,
    ];
}

thread_local! {
    static FLIPPED: Cell<Option<SignSite>> = const { Cell::new(None) };
}

/// `-1` if `site` is currently flipped, else `1`.
pub(crate) fn factor(site: SignSite) -> i64 {
    if FLIPPED.with(|f| f.get()) == Some(site) {
        -1
    } else {
        1
    }
}

/// Runs `f` with the sign at `site` negated.
pub fn with_flipped<T>(site: SignSite, f: impl FnOnce() -> T) -> T {
    struct Restore(Option<SignSite>);
    impl Drop for Restore {
        fn drop(&mut self) {
            FLIPPED.with(|c| c.set(self.0));
        }
    }
    let _restore = Restore(FLIPPED.with(|c| c.replace(Some(site))));
    f()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flip_is_scoped() {
        assert_eq!(factor(SignSite::ConeDifferential), 1);
        with_flipped(SignSite::ConeDifferential, || {
            assert_eq!(factor(SignSite::ConeDifferential), -1);
            assert_eq!(factor(SignSite::HomDifferential), 1);
        });
        assert_eq!(factor(SignSite::ConeDifferential), 1);
    }
}
