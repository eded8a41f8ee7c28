use growthrate_core::chartab::*;
use growthrate_core::closedform::r2;
use growthrate_core::exact::{BigInt, Cyclotomic};
use growthrate_core::growth::column_sums;

fn builtins() -> Vec<CharacterTable> {
    let mut out = Vec::new();
    for d in 1..=12 {
        out.push(build_cyclic(d).unwrap());
    }
    for m in 3..=16 {
        out.push(build_dihedral(2 * m).unwrap());
    }
    for m in 3..=7 {
        out.push(build_symmetric(m).unwrap());
    }
    for (p, k, j) in [(2, 4, 2), (2, 5, 2), (3, 3, 1), (3, 4, 2)] {
        out.push(build_semidirect(p, k, j).unwrap());
    }
    out
}

#[test]
fn builtins_validate() {
    for t in builtins() {
        t.validate().unwrap_or_else(|e| panic!("{}: {e}", t.group_name()));
        let dims: u64 = (0..t.num_chars()).map(|i| t.dim(i) * t.dim(i)).sum();
        assert_eq!(dims, t.order(), "{}", t.group_name());
        assert_eq!(t.num_chars(), t.num_classes());
    }
    for m in 8..=9 {
        build_symmetric(m).unwrap().validate().unwrap();
    }
}

#[test]
fn class_sums_normalise() {
    for t in builtins() {
        let sums = column_sums(&t).unwrap();
        let total: BigInt = sums
            .iter()
            .zip(t.classes())
            .map(|(s, c)| s.to_integer().expect("integer column sum") * BigInt::from(c.size))
            .sum();
        assert_eq!(total, BigInt::from(t.order()), "{}", t.group_name());
    }
}

#[test]
fn central_columns_are_galois_invariant() {
    for t in builtins() {
        let sums = column_sums(&t).unwrap();
        for (s, c) in t.classes().iter().enumerate() {
            if !c.central {
                continue;
            }
            for &image in c.power_map.as_ref().unwrap().values() {
                assert_eq!(t.classes()[image].rep_order, c.rep_order);
                assert_eq!(sums[image], sums[s], "{} class {}", t.group_name(), c.name);
            }
        }
    }
}

#[test]
fn power_maps_act_as_galois() {
    for t in builtins() {
        let units: Vec<u32> = t.classes()[0].power_map.as_ref().unwrap().keys().copied().collect();
        for l in units {
            let map = t.galois_power_map(l).unwrap();
            for row in t.chars() {
                for (s, v) in row.iter().enumerate() {
                    assert_eq!(row[map[s]], v.galois(i64::from(l)).unwrap());
                }
            }
        }
    }
}

#[test]
fn symmetric_column_sums_count_square_roots() {
    for m in 3..=7 {
        let t = build_symmetric(m).unwrap();
        let sums = column_sums(&t).unwrap();
        for (s, c) in t.classes().iter().enumerate() {
            let parts: Vec<u32> = c
                .name
                .split(' ')
                .flat_map(|p| {
                    let mut it = p.split('^');
                    let l: u32 = it.next().unwrap().parse().unwrap();
                    let k: usize = it.next().map_or(1, |k| k.parse().unwrap());
                    std::iter::repeat(l).take(k)
                })
                .collect();
            let a = CycleType::from_partition(&parts).unwrap();
            assert_eq!(sums[s], Cyclotomic::from_bigint(r2(&a).unwrap().r2), "S_{m} {}", c.name);
        }
    }
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..m).collect();
    fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(p.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, p, out);
            let j = if k % 2 == 0 { i } else { 0 };
            p.swap(j, k - 1);
        }
    }
    heap(m, &mut p, &mut out);
    out
}

fn cycle_type(p: &[usize]) -> CycleType {
    let mut seen = vec![false; p.len()];
    let mut parts = Vec::new();
    for s in 0..p.len() {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len > 0 {
            parts.push(len);
        }
    }
    CycleType::from_partition(&parts).unwrap()
}

#[test]
fn murnaghan_nakayama_matches_permutation_characters() {
    for m in 2..=6u32 {
        for p in permutations(m as usize) {
            let a = cycle_type(&p);
            let fixed = p.iter().enumerate().filter(|(i, &x)| *i == x).count() as i64;
            let one = |v: i64| Cyclotomic::from_integer(v);
            assert_eq!(murnaghan_nakayama(&[m], &a).unwrap(), one(1));
            assert_eq!(murnaghan_nakayama(&vec![1; m as usize], &a).unwrap(), one(a.sign()));
            assert_eq!(murnaghan_nakayama(&[m - 1, 1], &a).unwrap(), one(fixed - 1));
        }
    }
}

#[test]
fn s5_shape() {
    let t = build_symmetric(5).unwrap();
    let mut dims: Vec<u64> = (0..t.num_chars()).map(|i| t.dim(i)).collect();
    dims.sort_unstable();
    assert_eq!(dims, [1, 1, 4, 4, 5, 5, 6]);
    assert_eq!(t.classes()[t.class_index("1^5").unwrap()].size, 1);
    assert_eq!(t.classes()[t.class_index("5").unwrap()].size, 24);
}

#[test]
fn scaling_classes() {
    let t = build_cyclic(6).unwrap();
    let triv = RepCharacter::irreducible(&t, 0).unwrap();
    assert_eq!(kernel_scaling_classes(&triv).len(), 6);
    assert!(kernel_scaling_classes(&triv).iter().all(|(_, w)| w.is_one()));

    let d8 = build_dihedral(8).unwrap();
    let chi = (0..d8.num_chars())
        .map(|i| RepCharacter::irreducible(&d8, i).unwrap())
        .find(|c| c.dim() == 2)
        .unwrap();
    let ks = kernel_scaling_classes(&chi);
    let names: Vec<&str> = ks.iter().map(|(t, _)| d8.classes()[*t].name.as_str()).collect();
    assert_eq!(names, ["1", "r^2"]);
    assert_eq!(ks[1].1, Cyclotomic::from_integer(-1));

    let g = build_semidirect(2, 5, 2).unwrap();
    let chi = (0..g.num_chars())
        .map(|i| RepCharacter::irreducible(&g, i).unwrap())
        .find(|c| c.is_faithful())
        .unwrap();
    assert_eq!(chi.dim(), 4);
    let ks = kernel_scaling_classes(&chi);
    // The centre ⟨a^4⟩ ≅ C_8 acts through a faithful character of C_8, so
    // every eighth root of unity occurs exactly once.
    assert_eq!(ks.len(), 8);
    for e in 0..8 {
        let w = Cyclotomic::root_of_unity(8, e);
        assert_eq!(ks.iter().filter(|(_, x)| *x == w).count(), 1);
    }
}

#[test]
fn semidirect_faithful_dimensions() {
    for (p, k, j) in [(2, 4, 2), (2, 5, 2), (3, 3, 1), (3, 4, 2)] {
        let t = build_semidirect(p, k, j).unwrap();
        assert_eq!(t.order(), (p as u64).pow(k + j));
        for i in 0..t.num_chars() {
            let chi = RepCharacter::irreducible(&t, i).unwrap();
            if chi.is_faithful() {
                assert_eq!(chi.dim(), (p as u64).pow(j));
            }
        }
    }
    assert!(build_semidirect(2, 3, 2).is_err());
}

#[test]
fn broken_tables_are_rejected() {
    let t = build_dihedral(12).unwrap();
    let mut chars = t.chars().to_vec();
    chars[1][1] = Cyclotomic::from_integer(5);
    let broken = CharacterTable::new(
        "broken",
        t.order(),
        t.exponent(),
        t.classes().to_vec(),
        chars,
        TableKind::Ordinary,
    );
    assert!(broken.and_then(|b| b.validate()).is_err());
}
