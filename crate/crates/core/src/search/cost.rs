use rand::Rng;

use crate::group::FiniteGroup;
use crate::lift::lift_girth_via_base;
use crate::pregraph::Pregraph;
use crate::voltage::VoltageAssignment;

/// Contribution of one closed walk of length `q` whose net voltage has
/// order `order`.
pub fn walk_cost(q: usize, order: usize, penalty: f64) -> f64 {
    if order == 1 {
        penalty
    } else {
        1.0 / (q * order) as f64
    }
}

/// Sum of [`walk_cost`] over `m` sampled closed non-reversing walks of
/// length at most `max_len`. A walk starts on a uniform dart and extends
/// uniformly among non-reversing darts; it closes when it stands at the
/// start vertex and picks the start dart again. Walks that fail to close
/// are resampled.
pub fn cost_girth<R: Rng + ?Sized>(
    g: &Pregraph,
    group: &FiniteGroup,
    alpha: &VoltageAssignment,
    m: usize,
    penalty: f64,
    max_len: usize,
    rng: &mut R,
) -> f64 {
    let darts = g.darts();
    if m == 0 || darts.is_empty() || max_len == 0 {
        return 0.0;
    }
    let mut total = 0.0;
    let mut sampled = 0;
    let mut attempts = 0;
    let max_attempts = m.saturating_mul(64);
    let mut options: Vec<usize> = Vec::new();
    while sampled < m && attempts < max_attempts {
        attempts += 1;
        let d0 = rng.gen_range(0..darts.len());
        let start = darts[d0].tail;
        let mut last = d0;
        let mut net = alpha.get(d0).expect("total assignment");
        let mut len = 1;
        loop {
            let x = darts[last].head;
            options.clear();
            options.extend(g.out_darts(x).iter().copied().filter(|&d| d != darts[last].inverse));
            if options.is_empty() {
                break;
            }
            let next = options[rng.gen_range(0..options.len())];
            if x == start && next == d0 {
                total += walk_cost(len, group.elem_order(net), penalty);
                sampled += 1;
                break;
            }
            if len == max_len {
                break;
            }
            last = next;
            net = group.mul(net, alpha.get(last).expect("total assignment"));
            len += 1;
        }
    }
    total
}

/// Visit counts of base vertices and darts over all closed non-reversing
/// walks with identity net voltage whose length is the lift girth (at most
/// `cap`). Empty when the girth exceeds `cap`.
pub fn girth_walk_frequencies(g: &Pregraph, group: &FiniteGroup, alpha: &VoltageAssignment, cap: usize) -> (Vec<u64>, Vec<u64>) {
    let mut fv = vec![0u64; g.n()];
    let mut fd = vec![0u64; g.darts().len()];
    let Some(len) = lift_girth_via_base(g, group, alpha, cap) else { return (fv, fd) };
    let mut path = Vec::with_capacity(len);
    for d0 in 0..g.darts().len() {
        path.push(d0);
        walks(g, group, alpha, alpha.get(d0).expect("total assignment"), len, &mut path, &mut fv, &mut fd);
        path.pop();
    }
    (fv, fd)
}

#[allow(clippy::too_many_arguments)]
fn walks(g: &Pregraph, group: &FiniteGroup, alpha: &VoltageAssignment, net: usize, len: usize, path: &mut Vec<usize>, fv: &mut [u64], fd: &mut [u64]) {
    let last = *path.last().expect("non-empty walk");
    let x = g.dart(last).head;
    if path.len() == len {
        if x == g.dart(path[0]).tail && net == 0 {
            for &d in path.iter() {
                fv[g.dart(d).tail] += 1;
                fd[d] += 1;
            }
        }
        return;
    }
    for &d in g.out_darts(x) {
        if d == g.dart(last).inverse {
            continue;
        }
        path.push(d);
        walks(g, group, alpha, group.mul(net, alpha.get(d).expect("total assignment")), len, path, fv, fd);
        path.pop();
    }
}

fn variance(xs: &[u64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<u64>() as f64 / n;
    xs.iter().map(|&x| (x as f64 - mean).powi(2)).sum::<f64>() / n
}

/// Smaller of the variances of vertex and dart frequencies on girth walks.
pub fn cost_reg(g: &Pregraph, group: &FiniteGroup, alpha: &VoltageAssignment, cap: usize) -> f64 {
    let (fv, fd) = girth_walk_frequencies(g, group, alpha, cap);
    variance(&fv).min(variance(&fd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn petersen() -> (Pregraph, FiniteGroup, VoltageAssignment) {
        let g = Pregraph::parse("pregraph 2 / 0 1 / 0 0 / 1 1").unwrap();
        let c5 = cyclic(5).unwrap();
        let a = VoltageAssignment::parse("volt d C5\ndart 2 2\ndart 4 1\n", &g, &c5).unwrap().0;
        (g, c5, a)
    }

    #[test]
    fn walk_costs() {
        assert!((walk_cost(5, 5, 1000.0) - 0.04).abs() < 1e-12);
        assert_eq!(walk_cost(3, 1, 1000.0), 1000.0);
    }

    #[test]
    fn sampled_cost() {
        let (g, c5, a) = petersen();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(cost_girth(&g, &c5, &a, 0, 1000.0, 10, &mut rng), 0.0);
        // Walks shorter than the girth never close with identity voltage, so
        // the total stays below one penalty. Equal voltages on both loops
        // close a 4-walk around the edge, which sampling does hit.
        let good = cost_girth(&g, &c5, &a, 500, 1000.0, 4, &mut rng);
        assert!(0.0 < good && good < 1000.0, "{good}");
        let mut bad = a.clone();
        bad.set(&g, &c5, 2, 1);
        assert!(cost_girth(&g, &c5, &bad, 500, 1000.0, 4, &mut rng) >= 1000.0);
        // Single loop with voltage 1 in C5: every walk closes after one
        // step, so every sample costs 1 / (1 * 5).
        let one = Pregraph::parse("pregraph 1\n0 0\n").unwrap();
        let mut b = VoltageAssignment::unassigned(&one);
        b.set(&one, &c5, 0, 1);
        let c = cost_girth(&one, &c5, &b, 10, 1000.0, 10, &mut rng);
        assert!((c - 2.0).abs() < 1e-9);
        let mut z = VoltageAssignment::unassigned(&one);
        z.set(&one, &c5, 0, 0);
        assert_eq!(cost_girth(&one, &c5, &z, 3, 1000.0, 10, &mut rng), 3000.0);
    }

    #[test]
    fn petersen_walks_are_uniform() {
        let (g, c5, a) = petersen();
        let (fv, fd) = girth_walk_frequencies(&g, &c5, &a, 12);
        // 12 pentagons, 10 rooted orientations each, 5 lifts per base walk.
        assert_eq!(fd.iter().sum::<u64>(), 24 * 5);
        assert_eq!(fv, vec![60, 60]);
        assert_eq!(fd, vec![20; 6]);
        assert_eq!(cost_reg(&g, &c5, &a, 12), 0.0);
    }

    #[test]
    fn uneven_walks_cost_more() {
        // Vertex 1 hangs off a loop-carrying vertex 0 on a pendant path, so
        // girth walks never reach vertex 2.
        let g = Pregraph::parse("pregraph 3\n0 0\n0 1\n1 2\n").unwrap();
        let c5 = cyclic(5).unwrap();
        let mut a = VoltageAssignment::zero(&g);
        a.set(&g, &c5, 0, 1);
        assert!(cost_reg(&g, &c5, &a, 12) > 0.0);
        let one = Pregraph::parse("pregraph 1\n0 0\n").unwrap();
        let mut b = VoltageAssignment::unassigned(&one);
        b.set(&one, &c5, 0, 1);
        assert_eq!(cost_reg(&one, &c5, &b, 12), 0.0);
    }
}
