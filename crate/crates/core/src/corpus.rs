//! Seeded example generators: point configurations in the plane, cones over
//! them, hypersurfaces and complete intersections.

use std::sync::Arc;

use rand::Rng;

use crate::algebra::{random_form, GradedAlgebra};
use crate::error::Result;
use crate::field::Field;
use crate::identities::Facts;
use crate::ideal::Ideal;
use crate::parse::parse_polynomial;
use crate::points::PointSet;
use crate::poly::{Polynomial, Ring};

/// A named graded algebra, with its points when it is a coordinate ring.
pub struct Example<F: Field> {
    pub name: String,
    pub algebra: GradedAlgebra<F>,
    pub facts: Facts,
    pub points: Option<PointSet<F>>,
    pub complete_intersection: bool,
}

impl<F: Field> Example<F> {
    pub fn from_points(name: impl Into<String>, points: PointSet<F>) -> Result<Self> {
        Ok(Example {
            name: name.into(),
            algebra: points.algebra()?,
            facts: Facts { reduced: true, domain: points.len() == 1 },
            points: Some(points),
            complete_intersection: false,
        })
    }

    pub fn from_ideal(name: impl Into<String>, ideal: Ideal<F>, facts: Facts, complete_intersection: bool) -> Result<Self> {
        Ok(Example { name: name.into(), algebra: GradedAlgebra::new(ideal)?, facts, points: None, complete_intersection })
    }
}

pub fn plane<F: Field>(field: F) -> Arc<Ring<F>> {
    Ring::with_indexed_vars(field, 3).expect("three variables")
}

/// The four points `(0:-1:1), (0:0:1), (0:1:1), (1:0:1)`.
pub fn four_points<F: Field>(field: F) -> PointSet<F> {
    let ring = plane(field.clone());
    let pts = [[0, -1, 1], [0, 0, 1], [0, 1, 1], [1, 0, 1]]
        .iter()
        .map(|p| p.iter().map(|&c| field.from_i64(c)).collect())
        .collect();
    PointSet::new(&ring, pts).expect("distinct points")
}

fn random_point<F: Field, R: Rng + ?Sized>(ring: &Arc<Ring<F>>, rng: &mut R) -> Vec<F::Elem> {
    let field = &ring.field;
    let mut p: Vec<F::Elem> = (0..ring.nvars() - 1).map(|_| field.random(rng)).collect();
    p.push(field.one());
    p
}

fn push_distinct<F: Field>(pts: &mut Vec<Vec<F::Elem>>, p: Vec<F::Elem>) -> bool {
    if pts.contains(&p) {
        false
    } else {
        pts.push(p);
        true
    }
}

/// `s` uniformly random affine points of the plane, duplicates rejected.
pub fn random_points<F: Field, R: Rng + ?Sized>(ring: &Arc<Ring<F>>, s: usize, rng: &mut R) -> Result<PointSet<F>> {
    let mut pts = Vec::with_capacity(s);
    while pts.len() < s {
        push_distinct::<F>(&mut pts, random_point(ring, rng));
    }
    PointSet::new(ring, pts)
}

/// `k` points on a random line `x0 = λ x1 + μ x2` plus `extra` random
/// points, together with the line.
pub fn collinear_plus<F: Field, R: Rng + ?Sized>(
    ring: &Arc<Ring<F>>,
    k: usize,
    extra: usize,
    rng: &mut R,
) -> Result<(PointSet<F>, Polynomial<F>)> {
    let field = &ring.field;
    let (l, m) = (field.random(rng), field.random(rng));
    let mut pts = Vec::with_capacity(k + extra);
    while pts.len() < k {
        let t = field.random(rng);
        push_distinct::<F>(&mut pts, vec![field.add(&field.mul(&l, &t), &m), t, field.one()]);
    }
    let on_line = |p: &[F::Elem]| p[0] == field.add(&field.mul(&l, &p[1]), &field.mul(&m, &p[2]));
    while pts.len() < k + extra {
        let p = random_point(ring, rng);
        if !on_line(&p) {
            push_distinct::<F>(&mut pts, p);
        }
    }
    let x = |i| Polynomial::var(ring, i);
    let line = &(&x(0) - &x(1).scale(&l)) - &x(2).scale(&m);
    Ok((PointSet::new(ring, pts)?, line))
}

/// `k` points on the conic `x1^2 - x0 x2` plus `extra` points off it.
pub fn conic_plus<F: Field, R: Rng + ?Sized>(
    ring: &Arc<Ring<F>>,
    k: usize,
    extra: usize,
    rng: &mut R,
) -> Result<(PointSet<F>, Polynomial<F>)> {
    let field = &ring.field;
    let conic = parse_polynomial("x1^2 - x0*x2", ring)?;
    let mut pts = Vec::with_capacity(k + extra);
    while pts.len() < k {
        let t = field.random(rng);
        push_distinct::<F>(&mut pts, vec![field.mul(&t, &t), t, field.one()]);
    }
    while pts.len() < k + extra {
        let p = random_point(ring, rng);
        if !field.is_zero(&conic.evaluate(&p)?) {
            push_distinct::<F>(&mut pts, p);
        }
    }
    Ok((PointSet::new(ring, pts)?, conic))
}

/// The grid `{(i : j : 1)}` cut out by `prod (x0 - i x2)` and
/// `prod (x1 - j x2)`, a complete intersection of degrees `p` and `q`.
pub fn grid_points<F: Field>(ring: &Arc<Ring<F>>, p: usize, q: usize) -> Result<PointSet<F>> {
    let field = &ring.field;
    let pts = (0..p)
        .flat_map(|i| (0..q).map(move |j| (i, j)))
        .map(|(i, j)| vec![field.from_i64(i as i64), field.from_i64(j as i64), field.one()])
        .collect();
    PointSet::new(ring, pts)
}

/// The same generators in a ring with one more variable.
pub fn cone<F: Field>(ideal: &Ideal<F>) -> Result<Ideal<F>> {
    let ring = ideal.ring();
    let bigger = Ring::with_indexed_vars(ring.field.clone(), ring.nvars() + 1)?;
    let map: Vec<usize> = (0..ring.nvars()).collect();
    Ideal::new(&bigger, ideal.gens().iter().map(|g| g.remap(&bigger, &map)).collect())
}

/// Forms of the given degrees with random coefficients.
pub fn random_forms<F: Field, R: Rng + ?Sized>(ring: &Arc<Ring<F>>, degrees: &[u32], rng: &mut R) -> Vec<Polynomial<F>> {
    degrees.iter().map(|&d| random_form(ring, d, rng)).collect()
}

/// A complete intersection of random forms; retried until the codimension
/// is the number of forms.
pub fn random_complete_intersection<F: Field, R: Rng + ?Sized>(
    ring: &Arc<Ring<F>>,
    degrees: &[u32],
    rng: &mut R,
) -> Result<Ideal<F>> {
    loop {
        let i = Ideal::new(ring, random_forms(ring, degrees, rng))?;
        if i.codim()? == degrees.len() {
            return Ok(i);
        }
    }
}

/// The standard corpus of Cohen-Macaulay examples used by the suites.
pub fn standard_corpus<F: Field, R: Rng + ?Sized>(field: F, rng: &mut R) -> Result<Vec<Example<F>>> {
    let plane = plane(field.clone());
    let mut out = Vec::new();
    let four = four_points(field.clone());
    out.push(Example::from_points("four points", four.clone())?);
    for s in [4, 5, 6] {
        out.push(Example::from_points(format!("random {s} points"), random_points(&plane, s, rng)?)?);
    }
    let (col, _) = collinear_plus(&plane, 3, 2, rng)?;
    out.push(Example::from_points("3 collinear + 2", col)?);
    let mut grid = Example::from_points("grid 2x2", grid_points(&plane, 2, 2)?)?;
    grid.complete_intersection = true;
    out.push(grid);
    let mut grid = Example::from_points("grid 2x3", grid_points(&plane, 2, 3)?)?;
    grid.complete_intersection = true;
    out.push(grid);
    let reduced = Facts { reduced: true, domain: false };
    out.push(Example::from_ideal("cone over four points", cone(four.vanishing_ideal()?)?, reduced, false)?);
    let five = random_points(&plane, 5, rng)?;
    out.push(Example::from_ideal("cone over 5 points", cone(five.vanishing_ideal()?)?, reduced, false)?);
    let line = Ring::with_indexed_vars(field.clone(), 2)?;
    out.push(Example::from_ideal("quintic x0^5 + x1^5", Ideal::parse(&line, &["x0^5 + x1^5"])?, reduced, true)?);
    let cubic = Ideal::new(&plane, random_forms(&plane, &[3], rng))?;
    out.push(Example::from_ideal("random plane cubic", cubic, Facts { reduced: true, domain: true }, true)?);
    let ci = random_complete_intersection(&plane, &[2, 3], rng)?;
    out.push(Example::from_ideal("complete intersection (2,3) in P2", ci, Facts::default(), true)?);
    let space = Ring::with_indexed_vars(field, 4)?;
    let ci = random_complete_intersection(&space, &[2, 2], rng)?;
    out.push(Example::from_ideal("complete intersection (2,2) in P3", ci, Facts::default(), true)?);
    let fat = Ideal::parse(&plane, &["x0^2", "x1^2"])?;
    out.push(Example::from_ideal("monomial complete intersection", fat, Facts::default(), true)?);
    Ok(out)
}

/// A split `X = Y ∪ Z` with `f` vanishing on `Y`.
pub struct Split<F: Field> {
    pub name: String,
    pub y: PointSet<F>,
    pub z: PointSet<F>,
    pub f: Polynomial<F>,
}

/// The four-point split and nine seeded ones: points of `Y` on a line or a
/// conic, `Z` random.
pub fn split_configurations<F: Field, R: Rng + ?Sized>(field: F, rng: &mut R) -> Result<Vec<Split<F>>> {
    let plane = plane(field.clone());
    let four = four_points(field);
    let mut out = vec![Split {
        name: "four points".into(),
        y: four.subset(&[0, 1, 2])?,
        z: four.subset(&[3])?,
        f: parse_polynomial("x0", &plane)?,
    }];
    for k in 0..9 {
        let (y_size, z_size) = [(3, 1), (3, 2), (4, 1), (4, 2), (3, 3), (5, 1)][k % 6];
        let (all, f) = if k % 3 == 2 {
            conic_plus(&plane, y_size + 1, z_size, rng)?
        } else {
            collinear_plus(&plane, y_size, z_size, rng)?
        };
        let y_count = if k % 3 == 2 { y_size + 1 } else { y_size };
        let ys: Vec<usize> = (0..y_count).collect();
        let zs: Vec<usize> = (y_count..all.len()).collect();
        out.push(Split { name: format!("split {k}"), y: all.subset(&ys)?, z: all.subset(&zs)?, f });
    }
    Ok(out)
}
