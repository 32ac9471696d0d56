//! Writes a matrix to the JSON file format and reads it back.

use mean_transform::generators::{generate, GenKind, GenSpec};
use mean_transform::io::{matrix_to_string, parse_matrix};

fn main() -> mean_transform::Result<()> {
    let t = generate(&GenSpec::new(GenKind::Ginibre, 2, 5))?;
    let text = matrix_to_string(&t);
    println!("{text}");
    let back = parse_matrix(&text)?;
    println!("exact round trip: {}", back == t);
    println!("same text: {}", matrix_to_string(&back) == text);
    Ok(())
}
