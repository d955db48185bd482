use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::GeometryError;
use crate::Scalar;

/// A point in the plane. Metres once scaled, drawing units before.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    /// Lexicographic total order on (x, y).
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        match self.x.partial_cmp(&other.x) {
            Some(Ordering::Equal) | None => self.y.partial_cmp(&other.y).unwrap_or(Ordering::Equal),
            Some(o) => o,
        }
    }

    pub fn distance(&self, other: &Self) -> T {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Axis-aligned rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect<T> {
    pub min: Point<T>,
    pub max: Point<T>,
}

impl<T: Scalar> Rect<T> {
    pub fn new(min: Point<T>, max: Point<T>) -> Self {
        Self { min, max }
    }

    /// Rectangle of the given size centred on `centre`.
    pub fn centred(centre: Point<T>, width: T, height: T) -> Self {
        let two = T::lit(2.0);
        Self {
            min: Point::new(centre.x - width / two, centre.y - height / two),
            max: Point::new(centre.x + width / two, centre.y + height / two),
        }
    }

    pub fn width(&self) -> T {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> T {
        self.max.y - self.min.y
    }

    pub fn centre(&self) -> Point<T> {
        let two = T::lit(2.0);
        Point::new((self.min.x + self.max.x) / two, (self.min.y + self.max.y) / two)
    }

    /// Closed containment test.
    pub fn contains(&self, p: &Point<T>) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    pub fn contains_rect(&self, other: &Rect<T>) -> bool {
        self.contains(&other.min) && self.contains(&other.max)
    }

    pub fn union(&self, other: &Rect<T>) -> Rect<T> {
        Rect {
            min: Point::new(self.min.x.min(other.min.x), self.min.y.min(other.min.y)),
            max: Point::new(self.max.x.max(other.max.x), self.max.y.max(other.max.y)),
        }
    }

    /// Grows the rectangle by `dx` on the left and right and `dy` on the
    /// bottom and top.
    pub fn expand(&self, dx: T, dy: T) -> Rect<T> {
        Rect {
            min: Point::new(self.min.x - dx, self.min.y - dy),
            max: Point::new(self.max.x + dx, self.max.y + dy),
        }
    }
}

/// Simple closed polygon. The closing edge from the last vertex back to the
/// first is implicit; the first vertex is never repeated at the end.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point<T>>", into = "Vec<Point<T>>")]
#[serde(bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct Polygon<T: Scalar> {
    vertices: Vec<Point<T>>,
}

impl<T: Scalar> TryFrom<Vec<Point<T>>> for Polygon<T> {
    type Error = GeometryError;

    fn try_from(v: Vec<Point<T>>) -> Result<Self, Self::Error> {
        Polygon::new(v)
    }
}

impl<T: Scalar> From<Polygon<T>> for Vec<Point<T>> {
    fn from(p: Polygon<T>) -> Self {
        p.vertices
    }
}

impl<T: Scalar> Polygon<T> {
    /// Validates and builds a polygon.
    ///
    /// Consecutive duplicate vertices and an explicit closing vertex are
    /// dropped. Fails on fewer than three distinct vertices, zero area, or
    /// self-intersection.
    pub fn new(vertices: Vec<Point<T>>) -> Result<Self, GeometryError> {
        let mut vs: Vec<Point<T>> = Vec::with_capacity(vertices.len());
        for v in vertices {
            if !v.x.is_finite() || !v.y.is_finite() {
                return Err(GeometryError::MalformedSource("non-finite vertex coordinate".into()));
            }
            if vs.last() != Some(&v) {
                vs.push(v);
            }
        }
        while vs.len() > 1 && vs.first() == vs.last() {
            vs.pop();
        }
        if vs.len() < 3 {
            return Err(GeometryError::DegeneratePolygon(format!("{} distinct vertices", vs.len())));
        }
        let poly = Self { vertices: vs };
        let (p0, p1) = (poly.vertices[0], poly.vertices[1]);
        let collinear = poly.vertices[2..]
            .iter()
            .all(|v| (p1.x - p0.x) * (v.y - p0.y) - (p1.y - p0.y) * (v.x - p0.x) == T::zero());
        if collinear {
            return Err(GeometryError::DegeneratePolygon("all vertices collinear".into()));
        }
        if let Some((a, b)) = poly.first_self_intersection() {
            return Err(GeometryError::SelfIntersecting { edge_a: a, edge_b: b });
        }
        if poly.signed_area() == T::zero() {
            return Err(GeometryError::DegeneratePolygon("zero signed area".into()));
        }
        Ok(poly)
    }

    /// Builds a polygon without the simplicity check. Used for outlines
    /// produced by the offsetting routine, which are simple by construction.
    pub(crate) fn from_trusted(vertices: Vec<Point<T>>) -> Self {
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Iterator over the edges, including the closing edge.
    pub fn edges(&self) -> impl Iterator<Item = (Point<T>, Point<T>)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Shoelace area, positive for counter-clockwise vertex order.
    pub fn signed_area(&self) -> T {
        let mut acc = T::zero();
        for (a, b) in self.edges() {
            acc = acc + (a.x * b.y - b.x * a.y);
        }
        acc / T::lit(2.0)
    }

    pub fn area(&self) -> T {
        self.signed_area().abs()
    }

    pub fn perimeter(&self) -> T {
        self.edges().fold(T::zero(), |acc, (a, b)| acc + a.distance(&b))
    }

    /// Area centroid.
    pub fn centroid(&self) -> Point<T> {
        // Shift to the first vertex to keep the products small.
        let o = self.vertices[0];
        let (mut cx, mut cy, mut a2) = (T::zero(), T::zero(), T::zero());
        for (a, b) in self.edges() {
            let (ax, ay) = (a.x - o.x, a.y - o.y);
            let (bx, by) = (b.x - o.x, b.y - o.y);
            let cross = ax * by - bx * ay;
            a2 = a2 + cross;
            cx = cx + (ax + bx) * cross;
            cy = cy + (ay + by) * cross;
        }
        let three = T::lit(3.0);
        Point::new(o.x + cx / (three * a2), o.y + cy / (three * a2))
    }

    pub fn bounds(&self) -> Rect<T> {
        let mut r = Rect::new(self.vertices[0], self.vertices[0]);
        for v in &self.vertices[1..] {
            r.min.x = r.min.x.min(v.x);
            r.min.y = r.min.y.min(v.y);
            r.max.x = r.max.x.max(v.x);
            r.max.y = r.max.y.max(v.y);
        }
        r
    }

    /// Applies `f` to every vertex. The result is not re-validated, so `f`
    /// must be a similarity transform.
    pub(crate) fn map_vertices(&self, f: impl Fn(Point<T>) -> Point<T>) -> Self {
        Self { vertices: self.vertices.iter().copied().map(f).collect() }
    }

    /// Euclidean distance from `p` to the nearest point of the outline.
    pub fn distance_to_boundary(&self, p: &Point<T>) -> T {
        self.edges().map(|(a, b)| segment_distance(p, &a, &b)).fold(T::infinity(), T::min)
    }

    /// Closed containment: points on the outline are inside.
    pub fn contains(&self, p: &Point<T>) -> bool {
        point_in_polygon(p, self)
    }

    fn first_self_intersection(&self) -> Option<(usize, usize)> {
        let n = self.vertices.len();
        let edges: Vec<_> = self.edges().collect();
        for i in 0..n {
            for j in (i + 1)..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                let (a, b) = edges[i];
                let (c, d) = edges[j];
                if adjacent {
                    // Neighbouring edges share one vertex; they only clash when
                    // they fold back onto each other.
                    let shared = if j == i + 1 { b } else { a };
                    let (p, q) = if j == i + 1 { (a, d) } else { (b, c) };
                    if collinear_overlap(&shared, &p, &q) {
                        return Some((i, j));
                    }
                } else if segments_intersect(&a, &b, &c, &d) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// Even-odd ray-crossing test. Points on an edge or vertex count as inside.
pub fn point_in_polygon<T: Scalar>(p: &Point<T>, poly: &Polygon<T>) -> bool {
    let mut inside = false;
    for (a, b) in poly.edges() {
        if on_segment(p, &a, &b) {
            return true;
        }
        if (a.y > p.y) != (b.y > p.y) {
            let x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if p.x < x_cross {
                inside = !inside;
            }
        }
    }
    inside
}

fn cross<T: Scalar>(o: &Point<T>, a: &Point<T>, b: &Point<T>) -> T {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

fn on_segment<T: Scalar>(p: &Point<T>, a: &Point<T>, b: &Point<T>) -> bool {
    let scale = T::one().max(a.x.abs()).max(a.y.abs()).max(b.x.abs()).max(b.y.abs());
    segment_distance(p, a, b) <= T::boundary_eps() * scale
}

/// Distance from `p` to the closed segment `ab`.
pub(crate) fn segment_distance<T: Scalar>(p: &Point<T>, a: &Point<T>, b: &Point<T>) -> T {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    if len2 == T::zero() {
        return p.distance(a);
    }
    let t = (((p.x - a.x) * dx + (p.y - a.y) * dy) / len2).max(T::zero()).min(T::one());
    p.distance(&Point::new(a.x + t * dx, a.y + t * dy))
}

fn segments_intersect<T: Scalar>(a: &Point<T>, b: &Point<T>, c: &Point<T>, d: &Point<T>) -> bool {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    let z = T::zero();
    if ((d1 > z && d2 < z) || (d1 < z && d2 > z)) && ((d3 > z && d4 < z) || (d3 < z && d4 > z)) {
        return true;
    }
    (d1 == z && within_box(a, c, d))
        || (d2 == z && within_box(b, c, d))
        || (d3 == z && within_box(c, a, b))
        || (d4 == z && within_box(d, a, b))
}

fn within_box<T: Scalar>(p: &Point<T>, a: &Point<T>, b: &Point<T>) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// True when segments `shared→p` and `shared→q` point the same way along one line.
fn collinear_overlap<T: Scalar>(shared: &Point<T>, p: &Point<T>, q: &Point<T>) -> bool {
    if cross(shared, p, q) != T::zero() {
        return false;
    }
    let dot = (p.x - shared.x) * (q.x - shared.x) + (p.y - shared.y) * (q.y - shared.y);
    dot > T::zero()
}
