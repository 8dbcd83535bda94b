//! Gauss-Legendre rules, convex polygon clipping and triangle quadrature for
//! integrating polynomials over intersections of parallelograms in the plane.

use num_complex::Complex64;

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, z);
        dp = if d != 0.0 { d } else { dp };
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

fn legendre(n: usize, z: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, z);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

pub type Point = [f64; 2];

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Signed area, positive for counter-clockwise vertex order.
pub fn polygon_area(poly: &[Point]) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum::<f64>()
        * 0.5
}

fn ccw(mut poly: Vec<Point>) -> Vec<Point> {
    if polygon_area(&poly) < 0.0 {
        poly.reverse();
    }
    poly
}

/// Sutherland-Hodgman clipping of `subject` against the convex `clip`.
pub fn clip_convex(subject: &[Point], clip: &[Point]) -> Vec<Point> {
    let clip = ccw(clip.to_vec());
    let mut out = ccw(subject.to_vec());
    let n = clip.len();
    for i in 0..n {
        if out.is_empty() {
            break;
        }
        let (a, b) = (clip[i], clip[(i + 1) % n]);
        let input = std::mem::take(&mut out);
        let m = input.len();
        for j in 0..m {
            let cur = input[j];
            let prev = input[(j + m - 1) % m];
            let cin = cross(a, b, cur) >= 0.0;
            let pin = cross(a, b, prev) >= 0.0;
            if cin {
                if !pin {
                    out.push(intersect(prev, cur, a, b));
                }
                out.push(cur);
            } else if pin {
                out.push(intersect(prev, cur, a, b));
            }
        }
    }
    if out.len() < 3 || polygon_area(&out).abs() < 1e-300 {
        return Vec::new();
    }
    out
}

fn intersect(p: Point, q: Point, a: Point, b: Point) -> Point {
    let d1 = cross(a, b, p);
    let d2 = cross(a, b, q);
    let t = d1 / (d1 - d2);
    [p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]
}

/// `int_T f` over the triangle `T` via the collapsed-square map with an
/// `n x n` Gauss-Legendre product rule (exact for total degree `<= 2n - 2`).
pub fn triangle_integral(tri: [Point; 3], n: usize, f: &dyn Fn(Point) -> Complex64) -> Complex64 {
    let (x, w) = gauss_legendre(n);
    let [p0, p1, p2] = tri;
    let jac = cross(p0, p1, p2).abs();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let s = 0.5 * (x[i] + 1.0);
        for j in 0..n {
            let t = 0.5 * (x[j] + 1.0);
            // (s, t) in the unit square -> (u, v) = (s, (1 - s) t) in the unit triangle
            let u = s;
            let v = (1.0 - s) * t;
            let pt = [
                p0[0] + u * (p1[0] - p0[0]) + v * (p2[0] - p0[0]),
                p0[1] + u * (p1[1] - p0[1]) + v * (p2[1] - p0[1]),
            ];
            acc += f(pt) * (0.25 * w[i] * w[j] * (1.0 - s));
        }
    }
    acc * jac
}

/// Fan-triangulated integral over a convex polygon.
pub fn polygon_integral(poly: &[Point], n: usize, f: &dyn Fn(Point) -> Complex64) -> Complex64 {
    (1..poly.len().saturating_sub(1))
        .map(|i| triangle_integral([poly[0], poly[i], poly[i + 1]], n, f))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(5);
        for k in 0..10 {
            let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k)).sum();
            let want = if k % 2 == 0 { 2.0 / (k + 1) as f64 } else { 0.0 };
            assert!((got - want).abs() < 1e-14, "k={k}");
        }
    }

    #[test]
    fn clipping_two_squares() {
        let a = [[0.0, 0.0], [2.0, 0.0], [2.0, 2.0], [0.0, 2.0]];
        let b = [[1.0, 1.0], [3.0, 1.0], [3.0, 3.0], [1.0, 3.0]];
        let c = clip_convex(&a, &b);
        assert!((polygon_area(&c) - 1.0).abs() < 1e-15);
        let far = [[5.0, 5.0], [6.0, 5.0], [6.0, 6.0]];
        assert!(clip_convex(&a, &far).is_empty());
    }

    #[test]
    fn diamond_moment() {
        // int over |x| + |y| < 1 of x^2 = 1/3
        let d = [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]];
        let v = polygon_integral(&d, 4, &|p| Complex64::new(p[0] * p[0], 0.0));
        assert!((v.re - 1.0 / 3.0).abs() < 1e-14);
    }
}
