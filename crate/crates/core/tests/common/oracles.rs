//! Reference implementations that share no code with the library's LP path.

#![allow(dead_code)]

use std::cmp::Ordering;

use tvgraph::{PointConfig, Rational};

pub type P2 = [Rational; 2];

pub fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn cross(o: &P2, a: &P2, b: &P2) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

fn sign(x: &Rational) -> Ordering {
    x.cmp(&q(0))
}

/// Counter-clockwise hull by monotone chain, collinear points dropped.
/// Degenerate inputs give one or two vertices.
pub fn convex_hull(points: &[P2]) -> Vec<P2> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<P2> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && sign(&cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p)) != Ordering::Greater {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<P2> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && sign(&cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p)) != Ordering::Greater {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn on_segment(a: &P2, b: &P2, p: &P2) -> bool {
    sign(&cross(a, b, p)) == Ordering::Equal
        && p[0] >= a[0].clone().min(b[0].clone())
        && p[0] <= a[0].clone().max(b[0].clone())
        && p[1] >= a[1].clone().min(b[1].clone())
        && p[1] <= a[1].clone().max(b[1].clone())
}

fn segments_meet(a: &P2, b: &P2, c: &P2, d: &P2) -> bool {
    let (d1, d2) = (sign(&cross(a, b, c)), sign(&cross(a, b, d)));
    let (d3, d4) = (sign(&cross(c, d, a)), sign(&cross(c, d, b)));
    if d1 != d2 && d1 != Ordering::Equal && d2 != Ordering::Equal && d3 != d4 && d3 != Ordering::Equal && d4 != Ordering::Equal {
        return true;
    }
    on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b)
}

fn intersect_line(p: &P2, r: &P2, a: &P2, b: &P2) -> P2 {
    // Point on segment p-r hitting the line through a, b.
    let cp = cross(a, b, p);
    let cr = cross(a, b, r);
    let t = &cp / (&cp - &cr);
    [&p[0] + &t * (&r[0] - &p[0]), &p[1] + &t * (&r[1] - &p[1])]
}

/// Sutherland–Hodgman: clips `subject` (any vertex cycle, possibly of length
/// one or two) by the closed left half-planes of the ccw polygon `clip`.
fn clip(subject: Vec<P2>, clip: &[P2]) -> Vec<P2> {
    let mut out = subject;
    for i in 0..clip.len() {
        let (a, b) = (&clip[i], &clip[(i + 1) % clip.len()]);
        let input = std::mem::take(&mut out);
        if input.is_empty() {
            break;
        }
        let inside = |p: &P2| sign(&cross(a, b, p)) != Ordering::Less;
        for j in 0..input.len() {
            let cur = &input[j];
            let prev = &input[(j + input.len() - 1) % input.len()];
            match (inside(prev), inside(cur)) {
                (true, true) => out.push(cur.clone()),
                (true, false) => out.push(intersect_line(prev, cur, a, b)),
                (false, true) => {
                    out.push(intersect_line(prev, cur, a, b));
                    out.push(cur.clone());
                }
                (false, false) => {}
            }
        }
    }
    out
}

/// Whether the convex hulls of two planar point sets meet.
pub fn hulls_intersect(a: &[P2], b: &[P2]) -> bool {
    let (ha, hb) = (convex_hull(a), convex_hull(b));
    if ha.is_empty() || hb.is_empty() {
        return false;
    }
    let (subject, clipper) = if hb.len() >= 3 { (ha, hb) } else { (hb, ha) };
    if clipper.len() >= 3 {
        return !clip(subject, &clipper).is_empty();
    }
    match (subject.len(), clipper.len()) {
        (1, 1) => subject[0] == clipper[0],
        (1, 2) => on_segment(&clipper[0], &clipper[1], &subject[0]),
        (2, 1) => on_segment(&subject[0], &subject[1], &clipper[0]),
        _ => segments_meet(&subject[0], &subject[1], &clipper[0], &clipper[1]),
    }
}

/// Planar points of `config` with the given indices.
pub fn planar(config: &PointConfig<Rational>, idx: &[usize]) -> Vec<P2> {
    idx.iter()
        .map(|&i| [config.point(i)[0].clone(), config.point(i)[1].clone()])
        .collect()
}

/// Intervals spanned by each part on the line share a point.
pub fn intervals_meet(config: &PointConfig<Rational>, parts: &[Vec<usize>]) -> bool {
    let lo = parts
        .iter()
        .map(|p| p.iter().map(|&i| config.point(i)[0].clone()).min().unwrap())
        .max()
        .unwrap();
    let hi = parts
        .iter()
        .map(|p| p.iter().map(|&i| config.point(i)[0].clone()).max().unwrap())
        .min()
        .unwrap();
    lo <= hi
}

/// Restricted growth strings of length `n` with exactly `r` distinct values.
pub fn label_vectors(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, r: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            if max == r {
                out.push(cur.clone());
            }
            return;
        }
        if r - max > n - cur.len() {
            return;
        }
        for l in 0..=max.min(r - 1) {
            cur.push(l);
            go(n, r, cur, max.max(l + 1), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r >= 1 && r <= n {
        go(n, r, &mut Vec::new(), 0, &mut out);
    }
    out
}

pub fn parts_of(labels: &[usize]) -> Vec<Vec<usize>> {
    let r = labels.iter().max().map_or(0, |m| m + 1);
    let mut parts = vec![Vec::new(); r];
    for (i, &l) in labels.iter().enumerate() {
        parts[l].push(i);
    }
    parts
}

/// Stirling numbers of the second kind by the triangle recurrence.
pub fn stirling2(n: usize, k: usize) -> u128 {
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            row[j] = j as u128 * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    row[k]
}

/// Edges of the graph on all `r`-partitions of `n` elements, counted as half
/// the number of single-element moves that keep `r` nonempty parts.
pub fn abstract_edges(n: usize, r: usize) -> u128 {
    let mut moves = 0u128;
    for labels in label_vectors(n, r) {
        let sizes: Vec<usize> = parts_of(&labels).iter().map(Vec::len).collect();
        for &l in &labels {
            if sizes[l] > 1 {
                moves += (r - 1) as u128;
            }
        }
    }
    moves / 2
}

/// Number of elements that must change part to turn `p` into `q`, by trying
/// every matching of part labels.
pub fn move_distance(p: &[usize], q: &[usize], r: usize) -> usize {
    fn perms(r: usize) -> Vec<Vec<usize>> {
        if r == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(r - 1) {
            for pos in 0..=p.len() {
                let mut v = p.clone();
                v.insert(pos, r - 1);
                out.push(v);
            }
        }
        out
    }
    perms(r)
        .iter()
        .map(|sigma| p.iter().zip(q).filter(|&(&a, &b)| sigma[a] != b).count())
        .min()
        .unwrap()
}
