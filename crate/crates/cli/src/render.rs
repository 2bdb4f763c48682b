//! Static drawings of the covers `cover(D, 0..=n)`.

use std::fmt::Write as _;

use cantorval::digitset::DigitSet;
use cantorval::oracle::cover;
use cantorval::{IntervalUnion, Rational};
use num_traits::ToPrimitive;

pub const WIDTH: f64 = 1000.0;
const ROW: f64 = 16.0;
const SPACING: f64 = 8.0;

fn covers(d: &DigitSet, depth: usize) -> cantorval::Result<Vec<IntervalUnion>> {
    (0..=depth).map(|n| Ok(cover(d, n)?.union)).collect()
}

/// `[-1, 1]` onto `[0, WIDTH]`.
fn x(v: &Rational) -> f64 {
    (v.to_f64().expect("finite") + 1.0) * WIDTH / 2.0
}

pub fn svg(d: &DigitSet, depth: usize) -> cantorval::Result<String> {
    let rows = covers(d, depth)?;
    let height = rows.len() as f64 * (ROW + SPACING) + SPACING;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">"#
    )
    .unwrap();
    writeln!(s, "<title>{d}</title>").unwrap();
    writeln!(s, r##"<rect x="0" y="0" width="{WIDTH}" height="{height}" fill="#ffffff"/>"##).unwrap();
    for (n, union) in rows.iter().enumerate() {
        let y = SPACING + n as f64 * (ROW + SPACING);
        writeln!(s, r#"<g data-depth="{n}">"#).unwrap();
        for part in union.parts() {
            let (x0, x1) = (x(part.lo()), x(part.hi()));
            writeln!(
                s,
                r##"<rect x="{x0:.4}" y="{y}" width="{:.4}" height="{ROW}" fill="#1f3b63"><title>{part}</title></rect>"##,
                x1 - x0
            )
            .unwrap();
        }
        writeln!(s, "</g>").unwrap();
    }
    writeln!(s, "</svg>").unwrap();
    Ok(s)
}

pub fn csv(d: &DigitSet, depth: usize) -> cantorval::Result<String> {
    let mut s = String::from("depth,lo,hi\n");
    for (n, union) in covers(d, depth)?.iter().enumerate() {
        for part in union.parts() {
            writeln!(s, "{n},{},{}", part.lo(), part.hi()).unwrap();
        }
    }
    Ok(s)
}
