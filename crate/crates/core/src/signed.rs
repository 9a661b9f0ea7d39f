//! Signs of edge colourings and the signed edge colouring models that count
//! proper edge `k`-colourings of `k`-regular graphs.

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

use crate::enumerate::{for_each_uniform, sum_uniform, Budget};
use crate::error::{Error, Result};
use crate::fourier::{self, QFunction};
use crate::graph::{HalfEdge, Multigraph};
use crate::group::GroupSpec;
use crate::models::{edge_partition, halfedge_inner, EdgeModel, ModelValue, VertexWeights};
use crate::numeric::real;

/// `(-1)^{#inversions}` of `ℓ ↦ images[ℓ]`, or 0 if two images coincide.
pub fn sgn_injection<T: Ord>(images: &[T]) -> i32 {
    let mut sign = 1;
    for (l, a) in images.iter().enumerate() {
        for b in &images[l + 1..] {
            match a.cmp(b) {
                std::cmp::Ordering::Equal => return 0,
                std::cmp::Ordering::Greater => sign = -sign,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    sign
}

fn rotation_lists(graph: &Multigraph) -> Result<Vec<Vec<HalfEdge>>> {
    let rotation = graph.rotation().ok_or(Error::MissingRotation)?;
    Ok(rotation.orders().to_vec())
}

/// `Π_v sgn(h ↦ y_h)` over the rotation order at each vertex, colours
/// compared as integers.
pub fn sgn_edge_colouring(graph: &Multigraph, y: &[usize]) -> Result<i32> {
    let orders = rotation_lists(graph)?;
    if y.len() != graph.edge_count() {
        return Err(Error::LengthMismatch { expected: graph.edge_count(), found: y.len() });
    }
    let mut sign = 1;
    let mut buf = Vec::new();
    for order in &orders {
        buf.clear();
        buf.extend(order.iter().map(|h| y[h.edge]));
        sign *= sgn_injection(&buf);
        if sign == 0 {
            break;
        }
    }
    Ok(sign)
}

/// A colour set `K ⊆ Z_q` with an explicit linear order, optionally
/// generated as `K = P ∪ (-P)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColourSet {
    q: usize,
    members: Vec<usize>,
    rank: Vec<Option<usize>>,
    p: Option<Vec<usize>>,
}

impl ColourSet {
    /// `members` in the given order.
    pub fn with_order(q: usize, members: Vec<usize>) -> Result<Self> {
        let mut rank = vec![None; q];
        for (i, &c) in members.iter().enumerate() {
            if c >= q {
                return Err(Error::OutOfRange { what: "colour", index: c, size: q });
            }
            if rank[c].is_some() {
                return Err(Error::Precondition(format!("colour {c} listed twice")));
            }
            rank[c] = Some(i);
        }
        Ok(ColourSet { q, members, rank, p: None })
    }

    /// `members` ordered as residues `0 < 1 < … < q-1`.
    pub fn new(q: usize, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        Self::with_order(q, members)
    }

    pub fn full(q: usize) -> Self {
        Self::new(q, (0..q).collect()).expect("valid residues")
    }

    /// `{0, ±1, …, ±(k-1)/2}` for odd `k`, `{±1, …, ±k/2}` for even `k`, in
    /// centred integer order `-⌊k/2⌋ < … < ⌊k/2⌋`.
    pub fn symmetric(q: usize, k: usize) -> Result<Self> {
        if k > q {
            return Err(Error::Precondition(format!("k = {k} exceeds q = {q}")));
        }
        let half = (k / 2) as i64;
        if k % 2 == 0 && k == q {
            return Err(Error::Precondition(format!("±{half} collide in Z_{q}")));
        }
        let centred: Vec<i64> = if k % 2 == 1 {
            (-half..=half).collect()
        } else {
            (-half..=half).filter(|&c| c != 0).collect()
        };
        let members = centred.into_iter().map(|c| c.rem_euclid(q as i64) as usize).collect();
        let set = Self::with_order(q, members)?;
        if set.k() != k {
            return Err(Error::Precondition(format!("±1..±{half} collide in Z_{q}")));
        }
        Ok(set)
    }

    /// `K = P ∪ (-P)` in residue order, with `P ∩ (-P) ⊆ {0, q/2}`.
    pub fn from_p(q: usize, p: Vec<usize>) -> Result<Self> {
        let group = GroupSpec::cyclic(q);
        let mut k: Vec<usize> = Vec::new();
        for &a in &p {
            if a >= q {
                return Err(Error::OutOfRange { what: "colour", index: a, size: q });
            }
            let na = group.neg(a);
            if na != a && p.contains(&na) {
                return Err(Error::Precondition(format!("P contains both {a} and -{a}")));
            }
            k.push(a);
            if na != a {
                k.push(na);
            }
        }
        let mut set = Self::new(q, k)?;
        set.p = Some(p);
        Ok(set)
    }

    /// `Z_{k+1} \ {(k+1)/2}` for odd `k`, `Z_{k+1} \ {0}` for even `k`.
    pub fn kplus1(k: usize) -> Self {
        let q = k + 1;
        let skip = if k % 2 == 1 { q / 2 } else { 0 };
        Self::new(q, (0..q).filter(|&c| c != skip).collect()).expect("valid residues")
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn k(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn p(&self) -> Option<&[usize]> {
        self.p.as_deref()
    }

    pub fn contains(&self, c: usize) -> bool {
        self.rank.get(c).is_some_and(Option::is_some)
    }

    pub fn rank_of(&self, c: usize) -> Option<usize> {
        self.rank.get(c).copied().flatten()
    }

    pub fn closed_under_negation(&self) -> bool {
        let g = GroupSpec::cyclic(self.q);
        self.members.iter().all(|&c| self.contains(g.neg(c)))
    }

    /// `sgn` of `ℓ ↦ colours[ℓ]` in this set's order, 0 if not an injection into `K`.
    pub fn sign(&self, colours: &[usize]) -> i32 {
        let mut ranks = Vec::with_capacity(colours.len());
        for &c in colours {
            match self.rank_of(c) {
                Some(r) => ranks.push(r),
                None => return 0,
            }
        }
        sgn_injection(&ranks)
    }
}

/// `1_{Even(K)} - 1_{Odd(K)}` on `Z_q^k`, `k = |K|`.
pub fn parity_function(set: &ColourSet) -> QFunction {
    QFunction::from_fn(&GroupSpec::cyclic(set.q()), set.k(), |t| real(f64::from(set.sign(t))))
}

/// `1_{Even} - 1_{Odd}` on `Z_q^k`: all injective tuples, integer order.
pub fn parity_function_union(q: usize, k: usize) -> QFunction {
    QFunction::from_fn(&GroupSpec::cyclic(q), k, |t| real(f64::from(sgn_injection(t))))
}

fn i_pow(n: i64) -> Complex64 {
    match n.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// `det[e^{2πiℓm/q}] = i^{(q-1)(3q-2)/2} q^{q/2}`.
pub fn det_fourier(q: usize) -> Complex64 {
    let qi = q as i64;
    i_pow((qi - 1) * (3 * qi - 2) / 2) * (q as f64).powf(q as f64 / 2.0)
}

/// The same determinant by LU decomposition.
pub fn det_fourier_numeric(q: usize) -> Complex64 {
    let m = DMatrix::from_fn(q, q, |l, k| Complex64::from_polar(1.0, 2.0 * PI * (l * k) as f64 / q as f64));
    m.determinant()
}

fn sine_product(b: &[usize], q: usize) -> f64 {
    let mut p = 1.0;
    for l in 0..b.len() {
        for m in l + 1..b.len() {
            p *= 2.0 * (PI * (b[m] as f64 - b[l] as f64) / q as f64).sin();
        }
    }
    p
}

/// Closed form of `(1_{Even(K)} - 1_{Odd(K)})^F(b)` for the symmetric set
/// `K = ColourSet::symmetric(q, k)`, with `b_ℓ ∈ {0, …, q-1}`.
pub fn parity_fourier_closed(k: usize, q: usize, b: &[usize]) -> Result<Complex64> {
    if b.len() != k {
        return Err(Error::LengthMismatch { expected: k, found: b.len() });
    }
    let ki = k as i64;
    let base = i_pow(ki * (ki - 1) / 2) * (q as f64).powf(-(k as f64) / 2.0) * sine_product(b, q);
    if k % 2 == 1 {
        return Ok(base);
    }
    let mut cos_sum = 0.0;
    for mask in 0u32..(1 << k) {
        if mask.count_ones() as usize != k / 2 {
            continue;
        }
        let diff: i64 = (0..k).map(|l| if mask >> l & 1 == 1 { b[l] as i64 } else { -(b[l] as i64) }).sum();
        cos_sum += (PI * diff as f64 / q as f64).cos();
    }
    Ok(base * cos_sum)
}

/// `(k+1)^{-1/2} i^{k(k-1)/2} sgn(b)` for odd `k`, `(k+1)^{-1/2} i^{k(k+1)/2} sgn(b)`
/// for even `k`, with `sgn` taken in integer order on `{0, …, k}`.
pub fn parity_fourier_kplus1_uncorrected(k: usize, b: &[usize]) -> Result<Complex64> {
    if b.len() != k {
        return Err(Error::LengthMismatch { expected: k, found: b.len() });
    }
    let ki = k as i64;
    let exponent = if k % 2 == 1 { ki * (ki - 1) / 2 } else { ki * (ki + 1) / 2 };
    Ok(i_pow(exponent) * ((k + 1) as f64).powf(-0.5) * f64::from(sgn_injection(b)))
}

/// `(1_{Even(K)} - 1_{Odd(K)})^F(b)` for `K = ColourSet::kplus1(k)`.
///
/// For even `k` the value carries an extra factor `(-1)^m`, where `m` is
/// the colour of `{0, …, k}` missing from an injective `b`.
pub fn parity_fourier_kplus1(k: usize, b: &[usize]) -> Result<Complex64> {
    let base = parity_fourier_kplus1_uncorrected(k, b)?;
    if k % 2 == 1 || base.norm() == 0.0 {
        return Ok(base);
    }
    let missing = (0..=k).find(|c| !b.contains(c)).unwrap_or(0);
    Ok(if missing % 2 == 0 { base } else { -base })
}

/// Largest entrywise gap between `parity_function(set)^F` and `closed`.
pub fn parity_fourier_residual<F>(set: &ColourSet, closed: F) -> Result<f64>
where
    F: Fn(&[usize]) -> Result<Complex64>,
{
    let transformed = fourier::fourier(&parity_function(set));
    let mut worst: f64 = 0.0;
    for (i, v) in transformed.values().iter().enumerate() {
        worst = worst.max((closed(&transformed.tuple(i))? - v).norm());
    }
    Ok(worst)
}

fn parity_weights(graph: &Multigraph, set: &ColourSet) -> Result<VertexWeights> {
    graph.ensure_regular(set.k())?;
    VertexWeights::new(&GroupSpec::cyclic(set.q())).with(parity_function(set))
}

/// `((1_{Even(K)} - 1_{Odd(K)})^{⊗V}, 1_{Zero-sum}^{⊗E})` over half-edges in
/// rotation order.
pub fn zero_sum_parity_sum(graph: &Multigraph, set: &ColourSet, budget: Budget) -> Result<ModelValue> {
    rotation_lists(graph)?;
    let f = parity_weights(graph, set)?;
    halfedge_inner(graph, &f, &QFunction::zero_sum(&GroupSpec::cyclic(set.q()), 2), budget)
}

/// `((f^F)^{⊗V}, 1_{Monochrome}^{⊗E})` for the parity weight `f` of `set`.
pub fn monochrome_parity_fourier_sum(graph: &Multigraph, set: &ColourSet, budget: Budget) -> Result<ModelValue> {
    rotation_lists(graph)?;
    let f = parity_weights(graph, set)?.fourier();
    edge_partition(graph, &EdgeModel::uniform(f), budget)
}

/// `((1_{Even(K)} - 1_{Odd(K)})^{⊗V}, 1_{Monochrome}^{⊗E})`.
pub fn monochrome_parity_sum(graph: &Multigraph, set: &ColourSet, budget: Budget) -> Result<ModelValue> {
    rotation_lists(graph)?;
    let f = parity_weights(graph, set)?;
    edge_partition(graph, &EdgeModel::uniform(f), budget)
}

/// One directed circuit of a 2-factor: its edges and the head end each
/// edge takes when the circuit is traversed forwards.
struct Circuit {
    edges: Vec<(usize, u8)>,
}

/// Splits the edges labelled `a` into circuits, or `None` if some vertex
/// does not see exactly two of them.
fn circuits(graph: &Multigraph, y: &[usize], a: usize) -> Option<Vec<Circuit>> {
    let mut at: Vec<Vec<HalfEdge>> = vec![Vec::new(); graph.vertex_count()];
    for h in graph.half_edges() {
        if y[h.edge] == a {
            at[graph.vertex_of(h)].push(h);
        }
    }
    if at.iter().any(|hs| hs.len() != 2) {
        return None;
    }
    let mut used = vec![false; graph.edge_count()];
    let mut out = Vec::new();
    for start in 0..graph.edge_count() {
        if y[start] != a || used[start] {
            continue;
        }
        let mut edges = Vec::new();
        let mut leave = HalfEdge::new(start, 0);
        loop {
            used[leave.edge] = true;
            let arrive = leave.twin();
            edges.push((leave.edge, arrive.end));
            let v = graph.vertex_of(arrive);
            let next = if at[v][0] == arrive { at[v][1] } else { at[v][0] };
            if next.edge == start {
                break;
            }
            leave = next;
        }
        out.push(Circuit { edges });
    }
    Some(out)
}

/// `Σ_F sgn(F)` over oriented ordered bipartite (near) 2-factorizations
/// `F = (F_a : a ∈ P)`, signs taken in the order of `set`.
pub fn factorization_sign_sum(graph: &Multigraph, set: &ColourSet, budget: Budget) -> Result<i128> {
    let orders = rotation_lists(graph)?;
    graph.ensure_regular(set.k())?;
    let p = set.p().ok_or_else(|| Error::Precondition("colour set was not built from P".into()))?.to_vec();
    if !set.closed_under_negation() {
        return Err(Error::Precondition("K must satisfy -K = K".into()));
    }
    budget.admit(p.len(), graph.edge_count())?;
    let group = GroupSpec::cyclic(set.q());
    let mut total: i128 = 0;
    for_each_uniform(p.len(), graph.edge_count(), |labels| {
        let y: Vec<usize> = labels.iter().map(|&i| p[i]).collect();
        let mut heads = graph.orientation().heads().to_vec();
        let mut all_circuits = Vec::new();
        for &a in &p {
            if group.neg(a) == a {
                let ok = (0..graph.vertex_count())
                    .all(|v| graph.half_edges_at(v).iter().filter(|h| y[h.edge] == a).count() == 1);
                if !ok {
                    return;
                }
            } else {
                match circuits(graph, &y, a) {
                    Some(cs) if cs.iter().all(|c| c.edges.len() % 2 == 0) => all_circuits.extend(cs),
                    _ => return,
                }
            }
        }
        for c in &all_circuits {
            for &(e, head) in &c.edges {
                heads[e] = head;
            }
        }
        for choice in 0u64..(1 << all_circuits.len()) {
            let mut h = heads.clone();
            for (i, c) in all_circuits.iter().enumerate() {
                if choice >> i & 1 == 1 {
                    for &(e, head) in &c.edges {
                        h[e] = 1 - head;
                    }
                }
            }
            let mut sign = 1;
            for order in &orders {
                let colours: Vec<usize> =
                    order.iter().map(|he| if he.end == h[he.edge] { y[he.edge] } else { group.neg(y[he.edge]) }).collect();
                sign *= set.sign(&colours);
            }
            total += i128::from(sign);
        }
    });
    Ok(total)
}

/// `Σ sgn(y)` over proper edge `k`-colourings `y ∈ {0, …, k-1}^E`.
pub fn proper_colouring_sign_sum(graph: &Multigraph, k: usize, budget: Budget) -> Result<i128> {
    let orders = rotation_lists(graph)?;
    budget.admit(k, graph.edge_count())?;
    Ok(sum_uniform(k, graph.edge_count(), |y| i128::from(vertex_sign_product(&orders, y))))
}

fn vertex_sign_product(orders: &[Vec<HalfEdge>], y: &[usize]) -> i32 {
    let mut sign = 1;
    let mut buf = [0usize; 64];
    for order in orders {
        let n = order.len().min(64);
        for (slot, h) in buf.iter_mut().zip(order) {
            *slot = y[h.edge];
        }
        sign *= sgn_injection(&buf[..n]);
        if sign == 0 {
            return 0;
        }
    }
    sign
}

/// `q^{-|E|} Σ_y Π_v Π_{(v,e) < (v,f)} 2 sin(π(y_f - y_e)/q)`, `k` odd.
pub fn sine_model(graph: &Multigraph, q: usize, k: usize, budget: Budget) -> Result<ModelValue> {
    if k % 2 == 0 {
        return Err(Error::Precondition(format!("the sine model needs odd k, got {k}")));
    }
    if q < k {
        return Err(Error::Precondition(format!("q = {q} is below k = {k}")));
    }
    rotation_lists(graph)?;
    graph.ensure_regular(k)?;
    let group = GroupSpec::cyclic(q);
    let f = VertexWeights::new(&group).with(QFunction::from_fn(&group, k, |b| real(sine_product(b, q))))?;
    let z = edge_partition(graph, &EdgeModel::uniform(f), budget)?;
    Ok(z.scaled(real((q as f64).powi(-(graph.edge_count() as i32)))))
}

/// `(k+1)^{-|V|/2} Σ_{y ∈ Z_{k+1}^E} sgn(y)`.
pub fn kplus1_sign_sum(graph: &Multigraph, k: usize, budget: Budget) -> Result<ModelValue> {
    let orders = rotation_lists(graph)?;
    graph.ensure_regular(k)?;
    let terms = budget.admit(k + 1, graph.edge_count())?;
    let total: i128 = sum_uniform(k + 1, graph.edge_count(), |y| i128::from(vertex_sign_product(&orders, y)));
    let scale = ((k + 1) as f64).powf(-(graph.vertex_count() as f64) / 2.0);
    Ok(ModelValue::new(real(total as f64 * scale), terms, budget))
}

/// Whether `(c_0, c_1, c_2)` runs forwards around the cycle `(0 1 2 3)`.
fn clockwise(c: [usize; 3]) -> bool {
    let step = |a: usize, b: usize| (b + 4 - a) % 4;
    step(c[0], c[1]) + step(c[1], c[2]) + step(c[2], c[0]) == 4
}

/// `#even - #odd` proper edge 4-colourings of a cubic graph, a colouring
/// being odd when an odd number of vertices see their colours anticlockwise.
pub fn even_minus_odd_proper4(graph: &Multigraph, budget: Budget) -> Result<i128> {
    let orders = rotation_lists(graph)?;
    graph.ensure_regular(3)?;
    budget.admit(4, graph.edge_count())?;
    Ok(sum_uniform(4, graph.edge_count(), |y| {
        let mut anticlockwise = 0;
        for order in &orders {
            let c = [y[order[0].edge], y[order[1].edge], y[order[2].edge]];
            if c[0] == c[1] || c[1] == c[2] || c[0] == c[2] {
                return 0i128;
            }
            if !clockwise(c) {
                anticlockwise += 1;
            }
        }
        if anticlockwise % 2 == 0 {
            1
        } else {
            -1
        }
    }))
}

/// Sign relating the Zero-sum and Monochrome parity pairings over `Z_k`.
pub fn cor45_sign(k: usize, edges: usize, vertices: usize) -> Result<i32> {
    if k < 2 {
        return Err(Error::Precondition("k must be at least 2".into()));
    }
    let (k, e, v) = (k as i64, edges as i64, vertices as i64);
    let exponent = if k % 2 == 1 {
        (k - 1) / 2 * e
    } else {
        if (v - e).rem_euclid(2) != 0 {
            return Err(Error::Precondition("|V| - |E| must be even for even k".into()));
        }
        k / 2 * e + (v - e) / 2
    };
    Ok(if exponent.rem_euclid(2) == 0 { 1 } else { -1 })
}
