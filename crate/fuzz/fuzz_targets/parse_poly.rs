#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use skewlab::Context;

fn contexts() -> &'static (Context, Context) {
    static CTXS: OnceLock<(Context, Context)> = OnceLock::new();
    CTXS.get_or_init(|| {
        (
            Context::twisted(3, 1, 2, None).unwrap(),
            Context::differential(3, 3).unwrap(),
        )
    })
}

fuzz_target!(|data: &str| {
    let (twisted, differential) = contexts();
    for ctx in [twisted, differential] {
        if let Ok(f) = skewlab::parse::parse_poly(ctx, data) {
            // anything that parses must round-trip through its canonical text
            let text = skewlab::parse::format_poly(ctx, &f);
            let back = skewlab::parse::parse_poly(ctx, &text).expect("canonical text parses");
            assert_eq!(back, f);
        }
    }
});
