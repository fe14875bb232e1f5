#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use skewlab::Context;

fn contexts() -> &'static (Context, Context) {
    static CTXS: OnceLock<(Context, Context)> = OnceLock::new();
    CTXS.get_or_init(|| {
        (
            Context::twisted(2, 1, 2, None).unwrap(),
            Context::differential(2, 4).unwrap(),
        )
    })
}

fuzz_target!(|data: &str| {
    // The element expression parser must reject malformed input with an
    // error, never a panic, in both coefficient contexts.
    let (twisted, differential) = contexts();
    let _ = skewlab::parse::parse_element(twisted, data);
    let _ = skewlab::parse::parse_element(differential, data);
});
