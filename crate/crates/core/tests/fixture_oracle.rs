//! Recomputes the shipped decomposition matrices of SL₂(4) and SL₂(8) from
//! Brauer characters on the 2-regular classes.

use num_complex::Complex64;
use sl2lift::fixture::DecompFixture;

/// A 2-regular class: `diag(λ, λ⁻¹)` with `λ = e^{2πi·k/n}`.
#[derive(Clone, Copy)]
struct Class {
    k: u64,
    n: u64,
}

fn root(k: i64, n: u64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64)
}

fn trace_pow(c: Class, e: i64) -> Complex64 {
    root(c.k as i64 * e, c.n) + root(-(c.k as i64) * e, c.n)
}

fn classes(q: u64) -> Vec<Class> {
    let mut out = vec![Class { k: 0, n: 1 }];
    out.extend((1..(q - 1) / 2 + 1).map(|k| Class { k, n: q - 1 }));
    out.extend((1..q / 2 + 1).map(|k| Class { k, n: q + 1 }));
    out
}

/// Ordinary characters as (degree, values on the 2-regular classes).
fn ordinary(q: u64) -> Vec<(u64, Vec<Complex64>)> {
    let cl = classes(q);
    let one = Complex64::new(1.0, 0.0);
    let mut out = vec![(1, vec![one; cl.len()])];
    out.push((q, cl.iter().map(|c| if c.n == 1 { one * q as f64 } else if c.n == q - 1 { one } else { -one }).collect()));
    for i in 1..=(q - 2) / 2 {
        out.push((
            q + 1,
            cl.iter()
                .map(|c| match c.n {
                    1 => one * (q + 1) as f64,
                    n if n == q - 1 => trace_pow(*c, i as i64),
                    _ => Complex64::new(0.0, 0.0),
                })
                .collect(),
        ));
    }
    for j in 1..=q / 2 {
        out.push((
            q - 1,
            cl.iter()
                .map(|c| match c.n {
                    1 => one * (q - 1) as f64,
                    n if n == q + 1 => -trace_pow(*c, j as i64),
                    _ => Complex64::new(0.0, 0.0),
                })
                .collect(),
        ));
    }
    out
}

/// Brauer character of `⊗_{i∈I} V^{(2^i)}`.
fn brauer(q: u64, f: u32, mask: usize) -> Vec<Complex64> {
    classes(q)
        .iter()
        .map(|&c| (0..f).filter(|i| mask >> i & 1 == 1).map(|i| trace_pow(c, 1 << i)).product())
        .collect()
}

/// Solves `Σ x_I φ_I = χ` on the classes.
fn solve(phis: &[Vec<Complex64>], chi: &[Complex64]) -> Vec<i64> {
    let n = phis.len();
    let mut a: Vec<Vec<Complex64>> = (0..n).map(|r| (0..n).map(|c| phis[c][r]).chain([chi[r]]).collect()).collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm())).unwrap();
        a.swap(col, piv);
        for r in 0..n {
            if r != col {
                let t = a[r][col] / a[col][col];
                for c in col..=n {
                    let v = a[col][c];
                    a[r][c] -= t * v;
                }
            }
        }
    }
    (0..n)
        .map(|r| {
            let x = a[r][n] / a[r][r];
            assert!(x.im.abs() < 1e-9 && (x.re - x.re.round()).abs() < 1e-9, "non-integral multiplicity {x}");
            x.re.round() as i64
        })
        .collect()
}

fn check(fx: &DecompFixture) {
    let f = fx.f;
    let q = 1u64 << f;
    let phis: Vec<Vec<Complex64>> = (0..1usize << f).map(|m| brauer(q, f, m)).collect();
    let col = fx.column_of_mask().unwrap();
    let mut want: Vec<(u64, Vec<i64>)> = ordinary(q)
        .into_iter()
        .map(|(deg, chi)| {
            let by_mask = solve(&phis, &chi);
            let mut row = vec![0; by_mask.len()];
            for (m, x) in by_mask.into_iter().enumerate() {
                row[col[m]] = x;
            }
            (deg, row)
        })
        .collect();
    let mut got: Vec<(u64, Vec<i64>)> = fx
        .ordinary
        .iter()
        .zip(&fx.rows)
        .map(|(c, r)| (c.degree, r.iter().map(|&x| x as i64).collect()))
        .collect();
    want.sort();
    got.sort();
    assert_eq!(got, want);
    assert_eq!(fx.group_order(), q * (q * q - 1));
}

#[test]
fn sl2_4_fixture_matches_brauer_characters() {
    check(&DecompFixture::load(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/sl2_4.json")).unwrap());
}

#[test]
fn sl2_8_fixture_matches_brauer_characters() {
    check(&DecompFixture::load(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/sl2_8.json")).unwrap());
}
