//! Universal coefficients, duality regradings and product constructions.
//!
//! Unless stated otherwise, graded groups here are unreduced integral
//! homology.

use super::group::{AbelianGroup, GradedAbelianGroup};

/// `H^k = Hom(H_k, Z) ⊕ Ext(H_{k−1}, Z)`.
pub fn cohomology_from_homology(h: &GradedAbelianGroup) -> GradedAbelianGroup {
    let mut out = GradedAbelianGroup::new();
    for (k, g) in h.iter() {
        out.add_to(k, &g.free_part());
        out.add_to(k + 1, &g.torsion_part());
    }
    out
}

/// `H_k = free(H^k) ⊕ torsion(H^{k+1})`.
pub fn homology_from_cohomology(c: &GradedAbelianGroup) -> GradedAbelianGroup {
    let mut out = GradedAbelianGroup::new();
    for (k, g) in c.iter() {
        out.add_to(k, &g.free_part());
        out.add_to(k - 1, &g.torsion_part());
    }
    out
}

/// Regrades `i ↦ n − i`: relative homology of `(M, M − X)` in degree
/// `n − i` becomes cohomology of `X` in degree `i` for a closed
/// n-manifold `M`.
pub fn lefschetz_dual(g: &GradedAbelianGroup, ambient_dim: i32) -> GradedAbelianGroup {
    let mut out = GradedAbelianGroup::new();
    for (k, a) in g.iter() {
        out.set(ambient_dim - k, a.clone());
    }
    out
}

/// Unreduced homology of `S^n − X` from the unreduced homology of `X`,
/// via `H̃_i(S^n − X) ≅ H̃^{n−1−i}(X)`.
pub fn sw_dual(x_homology: &GradedAbelianGroup, n: i32) -> GradedAbelianGroup {
    let reduced_cohomology = cohomology_from_homology(&x_homology.reduced());
    let mut out = GradedAbelianGroup::new();
    for (k, g) in reduced_cohomology.iter() {
        out.add_to(n - 1 - k, g);
    }
    out.unreduced()
}

/// Integral Künneth formula for `H_*(A × B)`.
pub fn kunneth(a: &GradedAbelianGroup, b: &GradedAbelianGroup) -> GradedAbelianGroup {
    let mut out = GradedAbelianGroup::new();
    for (i, ga) in a.iter() {
        for (j, gb) in b.iter() {
            out.add_to(i + j, &ga.tensor(gb));
            out.add_to(i + j + 1, &ga.tor(gb));
        }
    }
    out
}

pub fn wedge(a: &GradedAbelianGroup, b: &GradedAbelianGroup) -> GradedAbelianGroup {
    a.reduced().direct_sum(&b.reduced()).unreduced()
}

pub fn wedge_all(parts: &[GradedAbelianGroup]) -> GradedAbelianGroup {
    parts
        .iter()
        .fold(GradedAbelianGroup::new(), |acc, p| acc.direct_sum(&p.reduced()))
        .unreduced()
}

pub fn smash(a: &GradedAbelianGroup, b: &GradedAbelianGroup) -> GradedAbelianGroup {
    kunneth(&a.reduced(), &b.reduced()).unreduced()
}

pub fn suspend(a: &GradedAbelianGroup) -> GradedAbelianGroup {
    a.reduced().shift(1).unreduced()
}

/// Homology of the n-sphere (n ≥ 0; S⁰ is two points).
pub fn sphere(n: i32) -> GradedAbelianGroup {
    let mut g = GradedAbelianGroup::from_list(0, &[AbelianGroup::free(1)]);
    g.add_to(n, &AbelianGroup::free(1));
    g
}

pub fn point() -> GradedAbelianGroup {
    sphere(0).reduced()
}

/// Homology of SO(3) ≅ RP³.
pub fn so3() -> GradedAbelianGroup {
    GradedAbelianGroup::from_list(
        0,
        &[
            AbelianGroup::free(1),
            AbelianGroup::cyclic(2),
            AbelianGroup::zero(),
            AbelianGroup::free(1),
        ],
    )
}

/// Homology of the r-torus.
pub fn torus(r: usize) -> GradedAbelianGroup {
    (0..r).fold(point(), |acc, _| kunneth(&acc, &sphere(1)))
}

/// Homology of the r-fold product of S³.
pub fn product_of_three_spheres(r: usize) -> GradedAbelianGroup {
    (0..r).fold(point(), |acc, _| kunneth(&acc, &sphere(3)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group::z_and_2;

    #[test]
    fn universal_coefficients() {
        let c = cohomology_from_homology(&so3());
        assert_eq!(c, GradedAbelianGroup::from_list(0, &[z_and_2(1, 0), z_and_2(0, 0), z_and_2(0, 1), z_and_2(1, 0)]));
        assert_eq!(homology_from_cohomology(&c), so3());
    }

    #[test]
    fn duals() {
        let d = sw_dual(&so3(), 6).reduced();
        assert_eq!(d, GradedAbelianGroup::from_list(2, &[z_and_2(1, 0), z_and_2(0, 1)]));
        assert_eq!(sw_dual(&sphere(3), 7).reduced(), sphere(3).reduced());
        assert!(sw_dual(&point(), 5).reduced().is_zero());
        let g = GradedAbelianGroup::from_list(2, &[z_and_2(0, 1), z_and_2(2, 0)]);
        assert_eq!(lefschetz_dual(&lefschetz_dual(&g, 6), 6), g);
        assert!(lefschetz_dual(&GradedAbelianGroup::new(), 6).is_zero());
    }

    #[test]
    fn products() {
        let three_spheres = wedge_all(&[sphere(3), sphere(3), sphere(3)]);
        assert_eq!(three_spheres.get(3), AbelianGroup::free(3));
        let k = kunneth(&three_spheres, &so3());
        let expected = GradedAbelianGroup::from_list(
            0,
            &[z_and_2(1, 0), z_and_2(0, 1), z_and_2(0, 0), z_and_2(4, 0), z_and_2(0, 3), z_and_2(0, 0), z_and_2(3, 0)],
        );
        assert_eq!(k, expected);
        let s = smash(&sphere(3), &sw_dual(&so3(), 6)).reduced();
        assert_eq!(s, GradedAbelianGroup::from_list(5, &[z_and_2(1, 0), z_and_2(0, 1)]));
        assert_eq!(suspend(&sphere(2)), sphere(3));
        assert_eq!(torus(2).get(1), AbelianGroup::free(2));
        // Tor term: RP³ × RP³ has Z/2 in degree 2 from Tor(H₁, H₁)
        assert_eq!(kunneth(&so3(), &so3()).get(2), z_and_2(0, 1));
    }
}
