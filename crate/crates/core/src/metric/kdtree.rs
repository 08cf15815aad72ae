//! Static k-d tree over 3-d coordinates (2-d spaces pad with zero).

pub struct KdTree {
    pts: Vec<[f64; 3]>,
    idx: Vec<usize>,
    /// Splitting cycles through the first `dims` axes; planar data uses 2.
    dims: usize,
}

const LEAF: usize = 8;

impl KdTree {
    pub fn new(pts: Vec<[f64; 3]>) -> Self {
        let mut idx: Vec<usize> = (0..pts.len()).collect();
        let dims = if pts.iter().all(|p| p[2] == 0.0) { 2 } else { 3 };
        build(&pts, &mut idx, 0, dims);
        KdTree { pts, idx, dims }
    }

    pub fn len(&self) -> usize {
        self.pts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pts.is_empty()
    }

    pub fn point(&self, i: usize) -> [f64; 3] {
        self.pts[i]
    }

    /// Index of the Euclidean nearest neighbour of `q`.
    pub fn nearest(&self, q: &[f64; 3]) -> usize {
        let mut best = (f64::INFINITY, usize::MAX);
        self.nearest_rec(&self.idx, 0, q, &mut best);
        best.1
    }

    fn nearest_rec(&self, idx: &[usize], depth: usize, q: &[f64; 3], best: &mut (f64, usize)) {
        if idx.len() <= LEAF {
            for &i in idx {
                let d = dist2(&self.pts[i], q);
                if d < best.0 {
                    *best = (d, i);
                }
            }
            return;
        }
        let axis = depth % self.dims;
        let mid = idx.len() / 2;
        let pivot = idx[mid];
        let diff = q[axis] - self.pts[pivot][axis];
        let d = dist2(&self.pts[pivot], q);
        if d < best.0 {
            *best = (d, pivot);
        }
        let (near, far) = if diff < 0.0 {
            (&idx[..mid], &idx[mid + 1..])
        } else {
            (&idx[mid + 1..], &idx[..mid])
        };
        self.nearest_rec(near, depth + 1, q, best);
        if diff * diff < best.0 {
            self.nearest_rec(far, depth + 1, q, best);
        }
    }

    /// Calls `f` on every point inside the axis-aligned box `center +- half`.
    pub fn for_each_in_box(&self, center: &[f64; 3], half: &[f64; 3], mut f: impl FnMut(usize)) {
        let lo = [center[0] - half[0], center[1] - half[1], center[2] - half[2]];
        let hi = [center[0] + half[0], center[1] + half[1], center[2] + half[2]];
        self.box_rec(&self.idx, 0, &lo, &hi, &mut f);
    }

    fn box_rec(&self, idx: &[usize], depth: usize, lo: &[f64; 3], hi: &[f64; 3], f: &mut impl FnMut(usize)) {
        let inside = |p: &[f64; 3]| (0..3).all(|k| p[k] >= lo[k] && p[k] <= hi[k]);
        if idx.len() <= LEAF {
            for &i in idx {
                if inside(&self.pts[i]) {
                    f(i);
                }
            }
            return;
        }
        let axis = depth % self.dims;
        let mid = idx.len() / 2;
        let pivot = idx[mid];
        let v = self.pts[pivot][axis];
        if inside(&self.pts[pivot]) {
            f(pivot);
        }
        if lo[axis] <= v {
            self.box_rec(&idx[..mid], depth + 1, lo, hi, f);
        }
        if hi[axis] >= v {
            self.box_rec(&idx[mid + 1..], depth + 1, lo, hi, f);
        }
    }
}

fn dist2(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)
}

fn build(pts: &[[f64; 3]], idx: &mut [usize], depth: usize, dims: usize) {
    if idx.len() <= LEAF {
        return;
    }
    let axis = depth % dims;
    let mid = idx.len() / 2;
    idx.select_nth_unstable_by(mid, |&a, &b| pts[a][axis].total_cmp(&pts[b][axis]));
    let (left, rest) = idx.split_at_mut(mid);
    build(pts, left, depth + 1, dims);
    build(pts, &mut rest[1..], depth + 1, dims);
}
