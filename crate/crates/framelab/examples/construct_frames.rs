//! The built-in frame families and the frame file format.
//!
//! Frames serialize to a small JSON schema: field, dimension, optional
//! label, and vectors (plain numbers when real, [re, im] pairs when
//! complex). Serialization round-trips byte for byte, which is what lets
//! runs be compared as files.
//!
//! Run with `cargo run --example construct_frames`.

use framelab::bounds::frame_bounds_l2;
use framelab::constructions::{build, ConstructionKind, ConstructionSpec};
use framelab::io::{parse_frame, serialize_frame};
use framelab::{Field, Result};

fn main() -> Result<()> {
    let specs = [
        ("copies family, k=2", ConstructionSpec {
            kind: ConstructionKind::Example33,
            k: 2,
            n: 2,
            m: 0,
            field: Field::Complex,
            seed: 0,
        }),
        ("basis + scaled Parseval copies", ConstructionSpec {
            kind: ConstructionKind::Prop34,
            k: 4,
            n: 3,
            m: 0,
            field: Field::Complex,
            seed: 9,
        }),
        ("random gaussian", ConstructionSpec {
            kind: ConstructionKind::RandomGaussian,
            k: 0,
            n: 2,
            m: 7,
            field: Field::Real,
            seed: 9,
        }),
        ("standard basis", ConstructionSpec {
            kind: ConstructionKind::Basis,
            k: 0,
            n: 4,
            m: 0,
            field: Field::Complex,
            seed: 0,
        }),
    ];

    for (name, spec) in &specs {
        let frame = build(spec)?;
        let bounds = frame_bounds_l2(&frame);
        println!(
            "{name}: {} dim {}, {} vectors, bounds ({:.6}, {:.6})",
            frame.field(),
            frame.dim(),
            frame.len(),
            bounds.lower,
            bounds.upper
        );
    }

    let frame = build(&specs[0].1)?;
    let text = serialize_frame(&frame);
    let back = parse_frame(&text)?;
    println!();
    println!("round trip is exact: {}", serialize_frame(&back) == text && back == frame);
    println!();
    print!("{text}");
    Ok(())
}
