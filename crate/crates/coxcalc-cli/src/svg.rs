//! SVG pictures of GIT fans of rank at most three.
//!
//! Rank two fans are drawn in the plane. Rank three fans are cut with the
//! plane `x + y + z = 1` and drawn in barycentric coordinates, so every ray
//! must have positive coordinate sum.

use coxcalc::cones::Cone;
use coxcalc::error::Error;
use coxcalc::gitfan::GitFan;
use num_traits::ToPrimitive;

use crate::CliError;

const SIZE: f64 = 400.0;
const COLORS: [&str; 6] = ["#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462"];

type Point = (f64, f64);

fn float(v: &num_bigint::BigInt) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

fn fmt(p: Point) -> String {
    format!("{:.2},{:.2}", p.0, p.1)
}

fn polygon(points: &[Point], fill: &str) -> String {
    let pts: Vec<String> = points.iter().map(|&p| fmt(p)).collect();
    format!("  <polygon points=\"{}\" fill=\"{fill}\" stroke=\"black\" stroke-width=\"1\"/>\n", pts.join(" "))
}

fn line(a: Point, b: Point) -> String {
    format!(
        "  <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\" stroke-width=\"1.5\"/>\n",
        a.0, a.1, b.0, b.1
    )
}

fn dot(p: Point) -> String {
    format!("  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"black\"/>\n", p.0, p.1)
}

/// Points sorted by angle around their barycenter.
fn convex_order(mut pts: Vec<Point>) -> Vec<Point> {
    let n = pts.len() as f64;
    let c = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
    pts.sort_by(|a, b| (a.1 - c.1).atan2(a.0 - c.0).total_cmp(&(b.1 - c.1).atan2(b.0 - c.0)));
    pts
}

fn pointed(c: &Cone) -> Result<(), CliError> {
    if !c.lineality().is_empty() {
        return Err(Error::InvalidCone("cannot draw a cone with lineality".into()).into());
    }
    Ok(())
}

fn plane_point(v: &[num_bigint::BigInt], scale: f64) -> Point {
    let (x, y) = (float(&v[0]), float(&v[1]));
    let len = (x * x + y * y).sqrt();
    (SIZE / 2.0 + scale * x / len, SIZE / 2.0 - scale * y / len)
}

fn section_point(v: &[num_bigint::BigInt]) -> Result<Point, CliError> {
    let (x, y, z) = (float(&v[0]), float(&v[1]), float(&v[2]));
    let s = x + y + z;
    if s <= 0.0 {
        return Err(Error::InvalidCone("a ray does not meet the plane x + y + z = 1".into()).into());
    }
    // vertices of the triangle for e1, e2, e3
    let corners = [(SIZE / 2.0, 20.0), (20.0, SIZE - 40.0), (SIZE - 20.0, SIZE - 40.0)];
    let w = [x / s, y / s, z / s];
    let p = (0..3).fold((0.0, 0.0), |acc, i| (acc.0 + w[i] * corners[i].0, acc.1 + w[i] * corners[i].1));
    Ok(p)
}

/// Renders the chambers of the fan, colored by chamber, with their rays.
pub fn render(fan: &GitFan) -> Result<String, CliError> {
    let rank = fan.cones.first().map_or(0, |c| c.cone.ambient());
    let mut body = String::new();
    match rank {
        1 => {
            let y = SIZE / 2.0;
            for (k, &i) in fan.chambers.iter().enumerate() {
                let c = &fan.cones[i].cone;
                pointed(c)?;
                let sgn = float(&c.rays()[0][0]).signum();
                let end = (SIZE / 2.0 + sgn * 150.0, y);
                body += &polygon(&[(SIZE / 2.0, y - 6.0), (end.0, y - 6.0), (end.0, y + 6.0), (SIZE / 2.0, y + 6.0)], COLORS[k % 6]);
            }
            body += &dot((SIZE / 2.0, y));
        }
        2 => {
            let o = (SIZE / 2.0, SIZE / 2.0);
            for (k, &i) in fan.chambers.iter().enumerate() {
                let c = &fan.cones[i].cone;
                pointed(c)?;
                let pts: Vec<Point> = c.rays().iter().map(|r| plane_point(r, 170.0)).collect();
                let mut poly = vec![o];
                poly.extend(pts);
                body += &polygon(&poly, COLORS[k % 6]);
            }
            for gc in fan.cones.iter().filter(|g| g.cone.dim() == 1) {
                body += &line(o, plane_point(&gc.cone.rays()[0], 180.0));
            }
            body += &dot(o);
        }
        3 => {
            for (k, &i) in fan.chambers.iter().enumerate() {
                let c = &fan.cones[i].cone;
                pointed(c)?;
                let pts = c.rays().iter().map(|r| section_point(r)).collect::<Result<Vec<_>, _>>()?;
                body += &polygon(&convex_order(pts), COLORS[k % 6]);
            }
            for gc in fan.cones.iter().filter(|g| g.cone.dim() == 1) {
                body += &dot(section_point(&gc.cone.rays()[0])?);
            }
        }
        _ => {
            return Err(CliError::Usage(format!("can only draw GIT fans of rank at most three, not {rank}")));
        }
    }
    Ok(format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n{body}</svg>\n"
    ))
}
