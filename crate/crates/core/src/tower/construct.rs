use serde::Serialize;

use crate::abelian::{enumerate_homs, DirectSum, FgAbGroup, GroupMap};
use crate::{Error, Result};

use super::{Tower, TowerMorphism};

/// `S^sh` (`S^sh_i = S_{i+1}`) with the morphism `S^sh -> S` whose components
/// are the structure maps of `S`.
pub fn shift(s: &Tower) -> (Tower, TowerMorphism) {
    let w = s.window();
    let shifted = if w == 0 {
        s.clone()
    } else {
        Tower::from_levels(
            (1..=w).map(|i| s.level(i).clone()).collect(),
            (1..w).map(|i| s.map(i).clone()).collect(),
            s.tail_endo().clone(),
        )
        .expect("a suffix of a tower is a tower")
    };
    let components = (0..=w).map(|i| s.map(i).clone()).collect();
    let f = TowerMorphism::new(shifted.clone(), s.clone(), components).expect("structure maps are natural");
    (shifted, f)
}

/// `N >-> S' ->> S` for a level-split null extension.
#[derive(Clone, Debug)]
pub struct NullExtension {
    pub tower: Tower,
    pub inclusion: TowerMorphism,
    pub projection: TowerMorphism,
}

/// `S'_i = N_i + S_i` with structure map `(n, s) -> (psi_i(s), f_i(s))`.
///
/// `psi[i]: S_{i+1} -> N_i` for `i <= K`, `K = max(windows)`; `psi[K]` is
/// used at every later level.
pub fn null_extension(s: &Tower, n: &Tower, psi: &[GroupMap]) -> Result<NullExtension> {
    if !n.is_null() {
        return Err(Error::Shape("the kernel tower must be null".into()));
    }
    let k = s.window().max(n.window());
    if psi.len() != k + 1 {
        return Err(Error::Shape(format!("expected {} maps psi, got {}", k + 1, psi.len())));
    }
    for (i, p) in psi.iter().enumerate() {
        if p.domain() != s.level(i + 1) || p.codomain() != n.level(i) {
            return Err(Error::Shape(format!(
                "psi_{i} must map {} -> {}",
                s.level(i + 1),
                n.level(i)
            )));
        }
    }
    let sums: Vec<DirectSum> = (0..=k)
        .map(|i| DirectSum::new(&[n.level(i).clone(), s.level(i).clone()]))
        .collect();
    let structure = |i: usize, src: &DirectSum, dst: &DirectSum| {
        src.map_from_blocks(
            dst,
            &[
                vec![Some(n.map(i).clone()), Some(psi[i].clone())],
                vec![None, Some(s.map(i).clone())],
            ],
        )
    };
    let maps = (0..k)
        .map(|i| structure(i, &sums[i + 1], &sums[i]))
        .collect::<Result<Vec<_>>>()?;
    let endo = structure(k, &sums[k], &sums[k])?;
    let tower = Tower::from_levels(sums.iter().map(|d| d.group.clone()).collect(), maps, endo)?;
    let inclusion = TowerMorphism::new(
        n.clone(),
        tower.clone(),
        sums.iter().map(|d| d.injection(0).clone()).collect(),
    )?;
    let projection = TowerMorphism::new(
        tower.clone(),
        s.clone(),
        sums.iter().map(|d| d.projection(1).clone()).collect(),
    )?;
    Ok(NullExtension {
        tower,
        inclusion,
        projection,
    })
}

/// Product (equal to the sum) of finitely many towers; the zero tower for an empty family.
pub fn limit_of_towers(family: &[Tower]) -> Tower {
    if family.is_empty() {
        return Tower::zero();
    }
    let k = family.iter().map(Tower::window).max().unwrap_or(0);
    let sums: Vec<DirectSum> = (0..=k)
        .map(|i| DirectSum::new(&family.iter().map(|t| t.level(i).clone()).collect::<Vec<_>>()))
        .collect();
    let diag = |i: usize, src: &DirectSum, dst: &DirectSum| {
        src.diagonal_map(dst, &family.iter().map(|t| t.map(i).clone()).collect::<Vec<_>>())
            .expect("levelwise maps fit the sums")
    };
    let maps = (0..k).map(|i| diag(i, &sums[i + 1], &sums[i])).collect();
    let endo = diag(k, &sums[k], &sums[k]);
    Tower::from_levels(sums.into_iter().map(|d| d.group).collect(), maps, endo).expect("levelwise sums form a tower")
}

/// `A(n)`: `A` at levels `0..=n` with identity maps, zero above.
pub fn a_n_tower(a: &FgAbGroup, n: usize) -> Tower {
    let z = FgAbGroup::trivial();
    let mut levels = vec![a.clone(); n + 1];
    levels.push(z.clone());
    let mut maps = vec![GroupMap::identity(a); n];
    maps.push(GroupMap::zero(&z, a));
    Tower::from_levels(levels, maps, GroupMap::zero(&z, &z)).expect("A(n) is well formed")
}

/// `iota(n): A(n) -> A(n+1)`, the identity at levels `<= n`.
pub fn iota(a: &FgAbGroup, n: usize) -> TowerMorphism {
    let z = FgAbGroup::trivial();
    let mut components = vec![GroupMap::identity(a); n + 1];
    components.push(GroupMap::zero(&z, a));
    components.push(GroupMap::zero(&z, &z));
    TowerMorphism::new(a_n_tower(a, n), a_n_tower(a, n + 1), components).expect("iota(n) is natural")
}

/// Every tower morphism `source -> target`, for a source with finite levels.
/// Chooses the tail component first, then extends downwards level by level.
pub fn enumerate_tower_morphisms(source: &Tower, target: &Tower, cap: u64) -> Result<Vec<TowerMorphism>> {
    let k = source.window().max(target.window());
    let mut partial: Vec<Vec<GroupMap>> = enumerate_homs(source.level(k), target.level(k), cap)?
        .into_iter()
        .filter(|phi| target.tail_endo().compose(phi).ok() == phi.compose(source.tail_endo()).ok())
        .map(|phi| vec![phi])
        .collect();
    for i in (0..k).rev() {
        let homs = enumerate_homs(source.level(i), target.level(i), cap)?;
        let mut next = Vec::new();
        for chosen in &partial {
            let above = chosen.last().expect("nonempty");
            let down = target.map(i).compose(above)?;
            for phi in &homs {
                if phi.compose(source.map(i))? == down {
                    let mut c = chosen.clone();
                    c.push(phi.clone());
                    next.push(c);
                }
            }
            if next.len() as u64 > cap {
                return Err(Error::CapExceeded {
                    cap,
                    needed: format!("more than {cap} partial morphisms"),
                });
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .map(|mut c| {
            c.reverse();
            TowerMorphism::new(source.clone(), target.clone(), c)
        })
        .collect()
}

/// Counts and checks behind `Hom(A(n), S) = Hom(A, S_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionReport {
    pub tower_morphisms: usize,
    pub group_maps: usize,
    /// `phi -> phi_n` is a bijection.
    pub bijective: bool,
    /// `(phi ∘ iota(n))_n = f_n ∘ phi_{n+1}` for every `phi: A(n+1) -> S`.
    pub square_commutes: bool,
}

impl AdjunctionReport {
    pub fn holds(&self) -> bool {
        self.bijective && self.square_commutes
    }
}

pub fn adjunction_check(a: &FgAbGroup, n: usize, s: &Tower, cap: u64) -> Result<AdjunctionReport> {
    let an = a_n_tower(a, n);
    let morphisms = enumerate_tower_morphisms(&an, s, cap)?;
    let homs = enumerate_homs(a, s.level(n), cap)?;
    let restricted: Vec<&GroupMap> = morphisms.iter().map(|m| m.component(n)).collect();
    let injective = (0..restricted.len()).all(|i| (0..i).all(|j| restricted[i] != restricted[j]));
    let surjective = homs.iter().all(|h| restricted.contains(&h));
    let bijective = injective && surjective && morphisms.len() == homs.len();

    let iota_n = iota(a, n);
    let square_commutes = enumerate_tower_morphisms(&a_n_tower(a, n + 1), s, cap)?
        .iter()
        .map(|phi| {
            let pulled = phi.compose(&iota_n)?;
            let pushed = s.map(n).compose(phi.component(n + 1))?;
            Ok(pulled.component(n) == &pushed && morphisms.contains(&pulled))
        })
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|ok| ok);
    Ok(AdjunctionReport {
        tower_morphisms: morphisms.len(),
        group_maps: homs.len(),
        bijective,
        square_commutes,
    })
}

/// `1 - F` on `S_0 + ... + S_{W-1}`, where `pr_j F = f_j pr_{j+1}` and the
/// last coordinate of `F` is dropped, together with its inverse `sum F^k`.
#[derive(Clone, Debug)]
pub struct WindowOperator {
    pub sum: DirectSum,
    pub one_minus_f: GroupMap,
    pub inverse: GroupMap,
}

pub fn one_minus_f_window(s: &Tower, w: usize) -> Result<WindowOperator> {
    if w == 0 {
        return Err(Error::Precondition("window must be at least 1".into()));
    }
    if (0..w).any(|i| !s.level(i).is_finite()) {
        return Err(Error::InfiniteGroup);
    }
    let sum = DirectSum::new(&(0..w).map(|i| s.level(i).clone()).collect::<Vec<_>>());
    let blocks: Vec<Vec<Option<GroupMap>>> = (0..w)
        .map(|r| (0..w).map(|c| (c == r + 1).then(|| s.map(r).clone())).collect())
        .collect();
    let f = sum.map_from_blocks(&sum, &blocks)?;
    let id = GroupMap::identity(&sum.group);
    let one_minus_f = id.add(&f.neg())?;
    let mut inverse = id.clone();
    let mut power = id;
    for _ in 1..w {
        power = power.compose(&f)?;
        inverse = inverse.add(&power)?;
    }
    Ok(WindowOperator {
        sum,
        one_minus_f,
        inverse,
    })
}
