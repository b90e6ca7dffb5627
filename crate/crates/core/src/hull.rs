//! Convex hulls in `R^3` (quickhull with conflict lists) and facet data for
//! simplices in higher dimensions.

use alloc::vec;
use alloc::vec::Vec;

use libm::{fabs, sqrt};

use crate::error::{GeomError, Result};
use crate::linalg::{cross3, dot, Matrix};

/// A polytope facet: outer unit normal, offset `h(P, normal)` and
/// `(n-1)`-dimensional area.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Facet {
    pub normal: Vec<f64>,
    pub offset: f64,
    pub area: f64,
}

/// Hull of a point set: the extreme points, facets and edges (as index
/// pairs into `vertices`).
#[derive(Clone, Debug)]
pub struct HullData {
    pub vertices: Vec<Vec<f64>>,
    pub facets: Vec<Facet>,
    pub edges: Vec<(usize, usize)>,
}

/// Facets with smaller area are treated as degenerate and dropped.
pub const MIN_FACET_AREA: f64 = 1e-12;

#[derive(Clone, Debug)]
struct Face {
    v: [usize; 3],
    n: [f64; 3],
    d: f64,
    nb: [usize; 3],
    alive: bool,
    outside: Vec<usize>,
}

fn plane(p: &[[f64; 3]], a: usize, b: usize, c: usize) -> ([f64; 3], f64, f64) {
    let e1 = [p[b][0] - p[a][0], p[b][1] - p[a][1], p[b][2] - p[a][2]];
    let e2 = [p[c][0] - p[a][0], p[c][1] - p[a][1], p[c][2] - p[a][2]];
    let cr = cross3(&e1, &e2);
    let len = sqrt(dot(&cr, &cr));
    if len == 0.0 {
        return ([0.0; 3], 0.0, 0.0);
    }
    let n = [cr[0] / len, cr[1] / len, cr[2] / len];
    let d = (dot(&n, &p[a]) + dot(&n, &p[b]) + dot(&n, &p[c])) / 3.0;
    (n, d, 0.5 * len)
}

#[inline]
fn dist(f: &Face, q: &[f64; 3]) -> f64 {
    f.n[0] * q[0] + f.n[1] * q[1] + f.n[2] * q[2] - f.d
}

/// Convex hull of points in `R^3`.
pub fn convex_hull_3d(points: &[[f64; 3]]) -> Result<HullData> {
    if points.len() < 4 {
        return Err(GeomError::InvalidBody("a 3-polytope needs at least 4 points".into()));
    }
    if points.iter().flatten().any(|x| !x.is_finite()) {
        return Err(GeomError::InvalidBody("non-finite vertex coordinate".into()));
    }
    let scale = points.iter().flatten().fold(0.0f64, |m, x| m.max(fabs(*x))).max(1e-300);
    let eps = 1e-11 * scale;

    // Initial tetrahedron from extreme points.
    let mut ext = [0usize; 6];
    for (i, q) in points.iter().enumerate() {
        for k in 0..3 {
            if q[k] < points[ext[2 * k]][k] {
                ext[2 * k] = i;
            }
            if q[k] > points[ext[2 * k + 1]][k] {
                ext[2 * k + 1] = i;
            }
        }
    }
    let d2 = |a: usize, b: usize| -> f64 { (0..3).map(|k| (points[a][k] - points[b][k]) * (points[a][k] - points[b][k])).sum() };
    let (mut i0, mut i1) = (ext[0], ext[1]);
    for k in 0..3 {
        if d2(ext[2 * k], ext[2 * k + 1]) > d2(i0, i1) {
            i0 = ext[2 * k];
            i1 = ext[2 * k + 1];
        }
    }
    if d2(i0, i1) <= eps * eps {
        return Err(GeomError::InvalidBody("points are coincident".into()));
    }
    let line = [
        points[i1][0] - points[i0][0],
        points[i1][1] - points[i0][1],
        points[i1][2] - points[i0][2],
    ];
    let mut i2 = usize::MAX;
    let mut best = 0.0;
    for (i, q) in points.iter().enumerate() {
        let r = [q[0] - points[i0][0], q[1] - points[i0][1], q[2] - points[i0][2]];
        let c = cross3(&line, &r);
        let v = dot(&c, &c);
        if v > best {
            best = v;
            i2 = i;
        }
    }
    if i2 == usize::MAX || sqrt(best) <= eps * sqrt(dot(&line, &line)) {
        return Err(GeomError::InvalidBody("points are collinear".into()));
    }
    let (n0, d0, _) = plane(points, i0, i1, i2);
    let mut i3 = usize::MAX;
    let mut best = 0.0;
    for (i, q) in points.iter().enumerate() {
        let v = fabs(dot(&n0, q) - d0);
        if v > best {
            best = v;
            i3 = i;
        }
    }
    if i3 == usize::MAX || best <= eps {
        return Err(GeomError::InvalidBody("points are coplanar".into()));
    }
    let (a, b, c, d) = if dot(&n0, &points[i3]) - d0 > 0.0 { (i0, i2, i1, i3) } else { (i0, i1, i2, i3) };
    // Faces of the tetrahedron with outward orientation; `d` is the apex.
    let tri = [[a, b, c], [a, d, b], [b, d, c], [c, d, a]];
    let mut faces: Vec<Face> = tri
        .iter()
        .map(|t| {
            let (n, off, _) = plane(points, t[0], t[1], t[2]);
            Face { v: *t, n, d: off, nb: [usize::MAX; 3], alive: true, outside: Vec::new() }
        })
        .collect();
    link_all(&mut faces);

    for (i, q) in points.iter().enumerate() {
        if i == a || i == b || i == c || i == d {
            continue;
        }
        for f in faces.iter_mut() {
            if dist(f, q) > eps {
                f.outside.push(i);
                break;
            }
        }
    }

    let mut vertex_start = vec![usize::MAX; points.len()];
    let mut vertex_end = vec![usize::MAX; points.len()];
    let mut visible_mark: Vec<bool> = vec![false; faces.len()];
    let mut cursor = 0;
    let mut guard = 0usize;
    while cursor < faces.len() {
        if !faces[cursor].alive || faces[cursor].outside.is_empty() {
            cursor += 1;
            continue;
        }
        guard += 1;
        if guard > 64 * points.len() + 1000 {
            return Err(GeomError::NoConvergence { what: "convex hull", iterations: guard });
        }
        let fi = cursor;
        let mut apex = faces[fi].outside[0];
        let mut far = f64::MIN;
        for &q in &faces[fi].outside {
            let dq = dist(&faces[fi], &points[q]);
            if dq > far {
                far = dq;
                apex = q;
            }
        }
        let p = points[apex];

        // Visible faces by breadth-first search from fi.
        visible_mark.resize(faces.len(), false);
        let mut visible = vec![fi];
        visible_mark[fi] = true;
        let mut k = 0;
        while k < visible.len() {
            let f = visible[k];
            k += 1;
            for &g in &faces[f].nb {
                if !visible_mark[g] && dist(&faces[g], &p) > eps {
                    visible_mark[g] = true;
                    visible.push(g);
                }
            }
        }
        // Horizon edges, oriented as in the visible face.
        let mut horizon = Vec::new();
        for &f in &visible {
            for e in 0..3 {
                let g = faces[f].nb[e];
                if !visible_mark[g] {
                    horizon.push((faces[f].v[e], faces[f].v[(e + 1) % 3], g));
                }
            }
        }
        let first_new = faces.len();
        for &(va, vb, g) in &horizon {
            let (n, off, _) = plane(points, va, vb, apex);
            let idx = faces.len();
            faces.push(Face { v: [va, vb, apex], n, d: off, nb: [g, usize::MAX, usize::MAX], alive: true, outside: Vec::new() });
            for e in 0..3 {
                if faces[g].v[e] == vb && faces[g].v[(e + 1) % 3] == va {
                    faces[g].nb[e] = idx;
                }
            }
            vertex_start[va] = idx;
            vertex_end[vb] = idx;
        }
        for idx in first_new..faces.len() {
            let [va, vb, _] = faces[idx].v;
            faces[idx].nb[1] = vertex_start[vb];
            faces[idx].nb[2] = vertex_end[va];
        }
        for idx in first_new..faces.len() {
            if faces[idx].nb.iter().any(|&x| x == usize::MAX) {
                return Err(GeomError::InvalidBody("convex hull horizon is not a simple cycle".into()));
            }
        }
        for &(va, vb, _) in &horizon {
            vertex_start[va] = usize::MAX;
            vertex_end[vb] = usize::MAX;
        }
        visible_mark.resize(faces.len(), false);
        let mut orphans = Vec::new();
        for &f in &visible {
            faces[f].alive = false;
            orphans.append(&mut faces[f].outside);
        }
        for &f in &visible {
            visible_mark[f] = false;
        }
        for q in orphans {
            if q == apex {
                continue;
            }
            for idx in first_new..faces.len() {
                if dist(&faces[idx], &points[q]) > eps {
                    faces[idx].outside.push(q);
                    break;
                }
            }
        }
        if fi < cursor {
            cursor = fi;
        }
    }

    assemble(points, &faces, eps)
}

fn link_all(faces: &mut [Face]) {
    for i in 0..faces.len() {
        for e in 0..3 {
            let (a, b) = (faces[i].v[e], faces[i].v[(e + 1) % 3]);
            for j in 0..faces.len() {
                if j == i {
                    continue;
                }
                for f in 0..3 {
                    if faces[j].v[f] == b && faces[j].v[(f + 1) % 3] == a {
                        faces[i].nb[e] = j;
                    }
                }
            }
        }
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Merges coplanar hull triangles into facets and collects vertices and
/// edges.
fn assemble(points: &[[f64; 3]], faces: &[Face], eps: f64) -> Result<HullData> {
    let alive: Vec<usize> = (0..faces.len()).filter(|&i| faces[i].alive).collect();
    let mut slot = vec![usize::MAX; faces.len()];
    for (k, &i) in alive.iter().enumerate() {
        slot[i] = k;
    }
    let mut parent: Vec<usize> = (0..alive.len()).collect();
    for (k, &i) in alive.iter().enumerate() {
        for &j in &faces[i].nb {
            let kj = slot[j];
            if kj == usize::MAX {
                continue;
            }
            let (fi, fj) = (&faces[i], &faces[j]);
            // Coplanar if the opposite vertex of each lies on the other plane.
            let coplanar = fj.v.iter().all(|&v| fabs(dist(fi, &points[v])) <= eps)
                && fi.v.iter().all(|&v| fabs(dist(fj, &points[v])) <= eps)
                && dot(&fi.n, &fj.n) > 0.0;
            if coplanar {
                let (ra, rb) = (find(&mut parent, k), find(&mut parent, kj));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
    }
    let mut group_of = vec![usize::MAX; alive.len()];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for k in 0..alive.len() {
        let r = find(&mut parent, k);
        if group_of[r] == usize::MAX {
            group_of[r] = groups.len();
            groups.push(Vec::new());
        }
        let g = group_of[r];
        group_of[k] = g;
        groups[g].push(k);
    }
    // Vertices in use, reindexed.
    let mut vmap = vec![usize::MAX; points.len()];
    let mut vertices = Vec::new();
    for &i in &alive {
        for &v in &faces[i].v {
            if vmap[v] == usize::MAX {
                vmap[v] = vertices.len();
                vertices.push(points[v].to_vec());
            }
        }
    }
    let mut facets = Vec::with_capacity(groups.len());
    let mut facet_of_group = vec![usize::MAX; groups.len()];
    for (g, members) in groups.iter().enumerate() {
        let mut nsum = [0.0; 3];
        let mut area = 0.0;
        for &k in members {
            let f = &faces[alive[k]];
            let (n, _, a) = plane(points, f.v[0], f.v[1], f.v[2]);
            for c in 0..3 {
                nsum[c] += a * n[c];
            }
            area += a;
        }
        let len = sqrt(dot(&nsum, &nsum));
        if area < MIN_FACET_AREA || len == 0.0 {
            continue;
        }
        let normal = [nsum[0] / len, nsum[1] / len, nsum[2] / len];
        let mut offset = f64::MIN;
        for &k in members {
            for &v in &faces[alive[k]].v {
                offset = offset.max(dot(&normal, &points[v]));
            }
        }
        facet_of_group[g] = facets.len();
        facets.push(Facet { normal: normal.to_vec(), offset, area });
    }
    let mut edges = Vec::new();
    for (k, &i) in alive.iter().enumerate() {
        for e in 0..3 {
            let j = faces[i].nb[e];
            let kj = slot[j];
            let (a, b) = (faces[i].v[e], faces[i].v[(e + 1) % 3]);
            if a < b && group_of[k] != group_of[kj] {
                edges.push((vmap[a], vmap[b]));
            }
        }
    }
    Ok(HullData { vertices, facets, edges })
}

/// Facets of a simplex in `R^n` given by `n + 1` affinely independent
/// vertices.
pub fn simplex_facets(vertices: &[Vec<f64>]) -> Result<Vec<Facet>> {
    let n = vertices.len() - 1;
    if vertices.iter().any(|v| v.len() != n) {
        return Err(GeomError::InvalidBody("a simplex in R^n needs n + 1 vertices".into()));
    }
    let mut facets = Vec::with_capacity(n + 1);
    for skip in 0..=n {
        let pts: Vec<&Vec<f64>> = vertices.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, v)| v).collect();
        let base = pts[0];
        let edges: Vec<Vec<f64>> = pts[1..].iter().map(|q| q.iter().zip(base).map(|(a, b)| a - b).collect()).collect();
        // Normal: cofactor expansion of the (n-1) edge vectors.
        let mut normal = vec![0.0; n];
        for (c, nc) in normal.iter_mut().enumerate() {
            let rows: Vec<Vec<f64>> = edges
                .iter()
                .map(|e| e.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, x)| *x).collect())
                .collect();
            let minor = if n == 1 { 1.0 } else { Matrix::from_rows(&rows).map(|m| m.det()).unwrap_or(0.0) };
            *nc = if c % 2 == 0 { minor } else { -minor };
        }
        let len = sqrt(dot(&normal, &normal));
        if len == 0.0 {
            return Err(GeomError::InvalidBody("degenerate simplex".into()));
        }
        // |normal| equals (n-1)! times the facet area.
        let area = len / (1..n).map(|k| k as f64).product::<f64>();
        let mut normal: Vec<f64> = normal.iter().map(|x| x / len).collect();
        let mut offset = dot(&normal, base);
        if dot(&normal, &vertices[skip]) > offset {
            normal.iter_mut().for_each(|x| *x = -*x);
            offset = -offset;
        }
        facets.push(Facet { normal, offset, area });
    }
    Ok(facets)
}
