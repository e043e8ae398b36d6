//! Writes the MegaM@Rt2-scale synthetic model as a `.req` file.
//!
//! Usage: `cargo run --example synth_model -- <out.req> [seed]`

use std::{env, fs, process};

use reqforge_core::dsl::serialize;
use reqforge_core::synth::{synthesize, SynthConfig};

fn main() {
    let mut args = env::args().skip(1);
    let Some(out) = args.next() else {
        eprintln!("usage: synth_model <out.req> [seed]");
        process::exit(2);
    };
    let mut config = SynthConfig::megamart();
    if let Some(seed) = args.next() {
        config.seed = seed.parse().unwrap_or_else(|_| {
            eprintln!("seed must be an unsigned integer");
            process::exit(2);
        });
    }
    let model = synthesize(&config);
    if let Err(e) = fs::write(&out, serialize(&model)) {
        eprintln!("{out}: {e}");
        process::exit(2);
    }
}
