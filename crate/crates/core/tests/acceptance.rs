//! End-to-end acceptance checks, one PASS/FAIL line per criterion.
//!
//! All comparisons are exact. Counting oracles (binomials, connected vertex
//! sets, sphere sets) are written out here rather than borrowed from the
//! library.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::process::ExitCode;
use std::time::Instant;

use cutcomplex::complex::{cut_complex, Complex};
use cutcomplex::error::Result;
use cutcomplex::formulas::{
    character_clique_union, character_cycle, character_path, clique_union_betti, f_poly_clique_union,
    face_lattice_condition, grid_betti_delta3, grid_connected4, grid_tau3, h_poly_clique_union, hook_character,
    wedge_count_disjoint_union, DihedralElement, LatticeMode, PathElement,
};
use cutcomplex::graph::{make_family, Family, Graph};
use cutcomplex::harness::catalog::{connected_graph_catalog, seeded_random_graphs};
use cutcomplex::harness::suite::delta2_shellable;
use cutcomplex::harness::verify::{disjoint_union_rows, family_graphs};
use cutcomplex::harness::{GoldenCell, GoldenData, Status};
use cutcomplex::homology::{euler_characteristic_reduced, homology_profile, trace_on_homology, HomologyProfile};
use cutcomplex::morse::{grid_delta4_matching, verify_matching};
use cutcomplex::perm::{Partition, Permutation};
use cutcomplex::shelling::{
    find_shelling, squared_path_shelling, squared_path_wedge_shelling, verify_shelling, SearchLimits, ShellingSearch,
};
use cutcomplex::vertex_set::VertexSet;

/// Criteria that cannot hold as literally stated; they still print FAIL.
/// Criterion 7 asks for |χ̃(Δ₅)| of 21 and 11, which are the antichain-formula
/// predictions; the complexes have 25 and 13.
const KNOWN_RED: &[usize] = &[7];

type Criterion = fn() -> Result<Checks>;

#[derive(Default)]
struct Checks {
    total: usize,
    failures: Vec<String>,
}

impl Checks {
    fn eq<T: PartialEq + Debug>(&mut self, what: impl Into<String>, expected: T, computed: T) {
        self.total += 1;
        if expected != computed {
            self.failures
                .push(format!("{}: expected {expected:?}, computed {computed:?}", what.into()));
        }
    }

    fn holds(&mut self, what: impl Into<String>, ok: bool) {
        self.eq(what, true, ok);
    }
}

fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn family(f: Family) -> Result<Graph> {
    make_family(&f)
}

fn betti_sum(p: &HomologyProfile) -> u64 {
    p.betti.values().sum()
}

fn sets(list: &[&[usize]]) -> Vec<VertexSet> {
    let mut v: Vec<VertexSet> = list.iter().map(|s| VertexSet::from(*s)).collect();
    v.sort();
    v
}

fn sorted_facets(c: &Complex) -> Vec<VertexSet> {
    let mut v = c.facets().to_vec();
    v.sort();
    v
}

/// Connected `k`-subsets of an `m x n` grid, by enumerating all subsets.
fn brute_grid_connected(m: usize, n: usize, k: usize) -> u64 {
    let cells = m * n;
    let adjacent = |a: usize, b: usize| {
        let (ra, ca, rb, cb) = (a / n, a % n, b / n, b % n);
        ra.abs_diff(rb) + ca.abs_diff(cb) == 1
    };
    let mut count = 0;
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        let mut seen = vec![subset[0]];
        let mut i = 0;
        while i < seen.len() {
            let v = seen[i];
            for &w in &subset {
                if !seen.contains(&w) && adjacent(v, w) {
                    seen.push(w);
                }
            }
            i += 1;
        }
        if seen.len() == k {
            count += 1;
        }
        // Next k-combination of 0..cells.
        let Some(pos) = (0..k).rev().find(|&i| subset[i] < cells - k + i) else {
            break;
        };
        subset[pos] += 1;
        for j in pos + 1..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
    count
}

fn figures() -> Result<Checks> {
    let mut c = Checks::default();
    let golden = GoldenData::embedded();
    let chordal = golden.figure("chordal-2-cut").expect("figure");
    let cx = cut_complex(&chordal.graph()?, 2)?;
    c.eq(
        "chordal graph, k=2 facets",
        sets(&[&[2, 3, 4], &[1, 4, 5], &[1, 2, 4]]),
        sorted_facets(&cx),
    );
    let other = golden.figure("nonshellable-4-cut").expect("figure");
    let cx = cut_complex(&other.graph()?, 4)?;
    c.eq(
        "six-vertex graph, k=4 facets",
        sets(&[&[1, 3], &[2, 4]]),
        sorted_facets(&cx),
    );
    let search = find_shelling(&cx, SearchLimits::default())?;
    c.holds(
        "six-vertex graph, k=4 has no shelling",
        matches!(search, ShellingSearch::NotShellable { .. }),
    );
    let cx = cut_complex(&family(Family::Cycle(5))?, 2)?;
    let expected = sets(&[&[2, 4, 5], &[1, 2, 4], &[1, 3, 4], &[1, 3, 5], &[2, 3, 5]]);
    c.eq("C5, k=2 facets", expected, sorted_facets(&cx));
    let profile = homology_profile(&cx, true)?;
    c.eq("C5, k=2 homology", BTreeMap::from([(1, 1)]), profile.betti.clone());
    c.holds("C5, k=2 torsion-free", profile.is_torsion_free() == Some(true));
    Ok(c)
}

fn edgeless() -> Result<Checks> {
    let mut c = Checks::default();
    for n in 3..=8 {
        let g = family(Family::Edgeless(n))?;
        for k in 2..n {
            let profile = homology_profile(&cut_complex(&g, k)?, true)?;
            let dim = (n - k) as isize - 1;
            c.eq(
                format!("E{n}, k={k}"),
                BTreeMap::from([(dim, binom(n - 1, k - 1))]),
                profile.betti.clone(),
            );
            c.holds(
                format!("E{n}, k={k} torsion-free"),
                profile.is_torsion_free() == Some(true),
            );
        }
    }
    Ok(c)
}

fn squared_path_table() -> Result<Checks> {
    let mut c = Checks::default();
    let golden = GoldenData::embedded();
    let table = golden.table("squared-path").expect("table");
    let mut computed = BTreeMap::new();
    for row in &table.rows {
        for &n in table.columns.iter().filter(|&&n| n <= 11) {
            let cx = cut_complex(&family(Family::SquaredPath(n))?, row.k)?;
            let profile = homology_profile(&cx, false)?;
            c.holds(format!("k={}, n={n} concentrated", row.k), profile.betti.len() <= 1);
            let value = betti_sum(&profile);
            computed.insert((row.k, n), value);
            match table.cell(row.k, n) {
                Some(GoldenCell::Value(v)) => c.eq(format!("k={}, n={n}", row.k), v, value),
                other => c.eq(
                    format!("k={}, n={n} cell", row.k),
                    Some("a number".to_string()),
                    other.map(|o| o.to_string()),
                ),
            }
        }
    }
    for (k, n, v) in [(3, 7, 3), (4, 8, 11), (5, 9, 26), (6, 10, 50), (7, 10, 15), (8, 11, 21)] {
        c.eq(format!("named value k={k}, n={n}"), Some(&v), computed.get(&(k, n)));
    }
    Ok(c)
}

fn squared_path_shellings() -> Result<Checks> {
    let mut c = Checks::default();
    let golden = GoldenData::embedded();
    let table = golden.table("squared-path").expect("table");
    let facet_count =
        |n: usize, k: usize| -> Result<usize> { Ok(cut_complex(&family(Family::SquaredPath(n))?, k)?.facet_count()) };
    for n in 5..=11 {
        let g = family(Family::SquaredPath(n))?;
        for k in 2..=n - 3 {
            let cx = cut_complex(&g, k)?;
            let cert = squared_path_shelling(n, k)?;
            c.holds(
                format!("k={k}, n={n} verifies"),
                verify_shelling(&cx, &cert.order).is_ok(),
            );
            let expected = match table.cell(k, n) {
                Some(GoldenCell::Value(v)) => v,
                _ => betti_sum(&homology_profile(&cx, false)?),
            };
            c.eq(
                format!("k={k}, n={n} full restrictions"),
                expected,
                cert.full_restriction_count as u64,
            );
            if n == k + 3 {
                c.eq(format!("k={k}, n={n} facets"), k * k - 1, cx.facet_count());
            }
        }
        if n >= 6 {
            let mut spheres: Vec<VertexSet> = (6..=n)
                .flat_map(|j| (1..=j - 5).map(move |b| VertexSet::from([b, j - 2, j]).complement(n)))
                .collect();
            spheres.sort();
            let mut got = squared_path_wedge_shelling(n)?.full_restriction_facets();
            got.sort();
            c.eq(format!("k=3, n={n} sphere set"), spheres, got);
            let step = binom(n - 3, 2) as usize + (n - 4) + (n - 5);
            c.eq(
                format!("k=3, n={n} facet recurrence"),
                step,
                facet_count(n, 3)? - facet_count(n - 1, 3)?,
            );
        }
    }
    Ok(c)
}

fn grid_delta3() -> Result<Checks> {
    let mut c = Checks::default();
    for (m, n, v) in [(2, 2, 0), (2, 3, 2), (2, 4, 8), (2, 5, 18), (3, 3, 10), (3, 4, 27)] {
        let profile = homology_profile(&cut_complex(&family(Family::Grid(m, n))?, 3)?, false)?;
        c.eq(format!("G({m},{n}) computed"), v, betti_sum(&profile));
        c.eq(format!("G({m},{n}) formula"), v as i64, grid_betti_delta3(m, n)?);
    }
    for m in 2..=6 {
        for n in m..=6 {
            c.eq(
                format!("tau3 G({m},{n})"),
                brute_grid_connected(m, n, 3) as i64,
                grid_tau3(m, n)?,
            );
            if (m, n) != (2, 2) {
                c.eq(
                    format!("connected 4-sets G({m},{n})"),
                    brute_grid_connected(m, n, 4) as i64,
                    grid_connected4(m, n)?,
                );
            }
        }
    }
    let limits = SearchLimits {
        max_facets: 500,
        ..SearchLimits::default()
    };
    for (m, n) in [(2, 3), (2, 4), (3, 3)] {
        let cx = cut_complex(&family(Family::Grid(m, n))?, 3)?;
        let search = find_shelling(&cx, limits)?;
        let verified = search
            .certificate()
            .is_some_and(|cert| verify_shelling(&cx, &cert.order).is_ok());
        c.holds(format!("G({m},{n}) shelling found and verified"), verified);
    }
    Ok(c)
}

fn grid_morse() -> Result<Checks> {
    let mut c = Checks::default();
    for (m, n, expected) in [(2, 4, 14usize), (2, 5, 52), (3, 3, 20)] {
        let g = family(Family::Grid(m, n))?;
        let cx = cut_complex(&g, 4)?;
        let report = verify_matching(&cx, &grid_delta4_matching(m, n)?)?;
        c.holds(format!("G({m},{n}) valid"), report.valid);
        c.holds(format!("G({m},{n}) acyclic"), report.acyclic);
        let top = (m * n) as isize - 5;
        c.eq(
            format!("G({m},{n}) critical cells"),
            BTreeMap::from([(top, expected)]),
            report.critical_by_dim.clone(),
        );
        let euler = binom(m * n - 1, 3) - brute_grid_connected(m, n, 4);
        c.eq(format!("G({m},{n}) Euler formula"), expected as u64, euler);
        let profile = homology_profile(&cx, true)?;
        c.eq(
            format!("G({m},{n}) homology"),
            BTreeMap::from([(top, expected as u64)]),
            profile.betti.clone(),
        );
        c.holds(
            format!("G({m},{n}) torsion-free"),
            profile.is_torsion_free() == Some(true),
        );
    }
    Ok(c)
}

fn grid_higher() -> Result<Checks> {
    let mut c = Checks::default();
    for (m, n, expected) in [(3, 3, 21i64), (2, 4, 11)] {
        let cx = cut_complex(&family(Family::Grid(m, n))?, 5)?;
        c.eq(
            format!("|reduced euler| of G({m},{n}), k=5"),
            expected,
            euler_characteristic_reduced(&cx).abs(),
        );
        let profile = homology_profile(&cx, true)?;
        let top = cx.dimension().expect("non-void");
        c.holds(
            format!("G({m},{n}), k=5 in top two dims"),
            profile.betti.keys().all(|&d| d >= top - 1),
        );
        c.holds(
            format!("G({m},{n}), k=5 torsion-free"),
            profile.is_torsion_free() == Some(true),
        );
    }
    for (m, n, k, facets) in [(2, 6, 10, 14), (3, 3, 7, 4)] {
        let cx = cut_complex(&family(Family::Grid(m, n))?, k)?;
        c.eq(format!("G({m},{n}), k={k} facets"), facets, cx.facet_count());
        let betti = homology_profile(&cx, false)?.betti;
        let beta1 = if (m, n) == (2, 6) { 3 } else { 1 };
        c.eq(
            format!("G({m},{n}), k={k} homology"),
            BTreeMap::from([(1, beta1)]),
            betti,
        );
    }
    for m in 2..=4 {
        for n in m..=4 {
            let g = family(Family::Grid(m, n))?;
            for k in [2, 4, 6].into_iter().filter(|&k| k < m * n) {
                let report = face_lattice_condition(&g, k, LatticeMode::Antichain)?;
                c.holds(format!("lattice condition G({m},{n}), k={k}"), report.holds);
            }
        }
    }
    let report = face_lattice_condition(&family(Family::Grid(3, 3))?, 8, LatticeMode::Antichain)?;
    c.holds("lattice condition fails for G(3,3), k=8", !report.holds);
    c.eq(
        "G(3,3), k=8 witness",
        Some((VertexSet::full(8), 9)),
        report.counterexample.map(|w| (w.set, w.x)),
    );
    Ok(c)
}

fn disjoint_unions() -> Result<Checks> {
    let mut c = Checks::default();
    let record = |c: &mut Checks, g1: &Graph, g2: &Graph| -> Result<()> {
        for k in 2..=4 {
            for row in disjoint_union_rows(g1, g2, k)? {
                let what = format!("{} {}", row.check, row.parameters);
                c.eq(what, row.expected, row.computed);
            }
        }
        Ok(())
    };
    let graphs = family_graphs(1..=5);
    for g1 in &graphs {
        for g2 in &graphs {
            record(&mut c, g1, g2)?;
        }
    }
    let random = seeded_random_graphs(200, 1, 5, 0.5, 2024)?;
    for pair in random.chunks(2) {
        record(&mut c, &pair[0], &pair[1])?;
    }
    for m in 1..=4 {
        for n in 1..=4 {
            let g = family(Family::union(Family::Complete(m), Family::Complete(n)))?;
            for k in 2..m + n {
                let cx = cut_complex(&g, k)?;
                let label = format!("K{m}+K{n}, k={k}");
                c.eq(
                    format!("{label} f-poly"),
                    f_poly_clique_union(m, n, k),
                    cx.f_polynomial(),
                );
                c.eq(
                    format!("{label} h-poly"),
                    h_poly_clique_union(m, n, k),
                    cx.h_polynomial()?,
                );
                let profile = homology_profile(&cx, false)?;
                let top = (m + n - k) as isize - 1;
                let expected = BTreeMap::from([(top, clique_union_betti(m, n, k))]);
                c.eq(format!("{label} betti"), expected, profile.betti.clone());
                c.eq(
                    format!("{label} wedge count"),
                    wedge_count_disjoint_union(0, 0, m, n, k),
                    betti_sum(&profile),
                );
            }
        }
    }
    Ok(c)
}

fn characters() -> Result<Checks> {
    let mut c = Checks::default();
    for n in 1..=8 {
        for k in 1..=n {
            let identity = Partition::new(vec![1; n]);
            c.eq(
                format!("hook dimension n={n}, k={k}"),
                binom(n - 1, k - 1) as i64,
                hook_character(n, k, &identity)?,
            );
        }
    }
    for m in 1..=4 {
        for n in 1..=4 {
            let g = family(Family::union(Family::Complete(m), Family::Complete(n)))?;
            for k in 2..m + n {
                let cx = cut_complex(&g, k)?;
                let profile = homology_profile(&cx, false)?;
                for lm in Partition::all(m) {
                    for ln in Partition::all(n) {
                        let p = Permutation::with_cycle_type(&lm).direct_sum(&Permutation::with_cycle_type(&ln));
                        let oracle = trace_on_homology(&cx, &profile, &p)?;
                        let label = format!("K{m}+K{n}, k={k}, {lm} {ln}");
                        c.eq(label, oracle, Some(character_clique_union(m, n, k, &lm, &ln)?));
                    }
                }
            }
        }
    }
    for n in 4..=8 {
        let path = family(Family::Path(n))?;
        let cycle = family(Family::Cycle(n))?;
        for k in 2..=n - 2 {
            let cx = cut_complex(&path, k)?;
            let profile = homology_profile(&cx, false)?;
            for e in [PathElement::Identity, PathElement::Flip] {
                let oracle = trace_on_homology(&cx, &profile, &e.permutation(n))?;
                c.eq(format!("P{n}, k={k}, {e:?}"), oracle, Some(character_path(n, k, e)?));
            }
            let cx = cut_complex(&cycle, k)?;
            let profile = homology_profile(&cx, false)?;
            for e in DihedralElement::all(n) {
                let oracle = trace_on_homology(&cx, &profile, &e.permutation(n))?;
                c.eq(format!("C{n}, k={k}, {e:?}"), oracle, Some(character_cycle(n, k, e)?));
            }
        }
        // k = 2: the homology is the line where the long cycle acts by its
        // sign and the reflection i -> n+1-i by the sign below.
        let sgn = |e: usize| if e.is_multiple_of(2) { 1 } else { -1 };
        let reflection = if n % 2 == 0 {
            sgn((n - 2) / 2)
        } else {
            sgn(n.div_ceil(2))
        };
        let cx = cut_complex(&cycle, 2)?;
        let profile = homology_profile(&cx, false)?;
        for (e, value) in [
            (DihedralElement::Rotation(1), sgn(n - 1)),
            (DihedralElement::Reflection(0), reflection),
        ] {
            let oracle = trace_on_homology(&cx, &profile, &e.permutation(n))?;
            c.eq(format!("C{n}, k=2, {e:?} oracle"), Some(value), oracle);
            c.eq(format!("C{n}, k=2, {e:?} formula"), value, character_cycle(n, 2, e)?);
        }
    }
    Ok(c)
}

fn froberg() -> Result<Checks> {
    let mut c = Checks::default();
    let catalog = connected_graph_catalog(6)?;
    c.eq("catalog size", 1 + 1 + 2 + 6 + 21 + 112, catalog.len());
    for g in &catalog {
        let label = g.to_edge_list().trim().replace('\n', " ");
        match delta2_shellable(g, SearchLimits::default())? {
            Some(shellable) => c.eq(label, g.is_chordal_by_cycles(), shellable),
            None => c.eq(label, "decided", "undecided"),
        }
    }
    Ok(c)
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 10] = [
        ("figure fidelity", figures),
        ("edgeless family", edgeless),
        ("squared-path table", squared_path_table),
        ("squared-path shelling", squared_path_shellings),
        ("grid delta3", grid_delta3),
        ("grid delta4 morse", grid_morse),
        ("grid delta5, 1-dim, face lattice", grid_higher),
        ("disjoint-union algebra", disjoint_unions),
        ("characters", characters),
        ("chordal iff delta2 shellable", froberg),
    ];
    let mut unexpected = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let id = i + 1;
        let start = Instant::now();
        let checks = run().unwrap_or_else(|e| Checks {
            total: 1,
            failures: vec![format!("error: {e}")],
        });
        let ms = start.elapsed().as_millis();
        let status = if checks.failures.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        println!("criterion {id:>2} {status} {name} ({} checks, {ms} ms)", checks.total);
        for failure in checks.failures.iter().take(5) {
            println!("      {failure}");
        }
        if status == Status::Fail && !KNOWN_RED.contains(&id) {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
