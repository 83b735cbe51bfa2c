//! Independent evaluator for the necklace product, built from the
//! orientation formalism instead of the closed-form sign exponents.
//!
//! A product term is the two-vertex tree with `psi`'s first output plugged
//! into the last region of `phi`, with the composite output labels rotated
//! around the diagram. Each rotation is evaluated literally: the ordering
//! `(e_1 e_2 ... e_{k+l-1} phi e psi)` is brought to the diagram's normal
//! form by a weighted permutation (edges weigh `d-1`, a vertex weighs `d`
//! plus its cyclic degree), and the normal form is evaluated by the
//! step-by-step string calculus. The closed form in the parent module must
//! agree with this entry for entry; the two share only scalar and
//! permutation primitives.

use super::{Groups, HigherCochain, OutTuple};
use crate::grading::{BasisId, GradedBasis};
use crate::perm::rearrangement_sign;
use crate::scalar::Scalar;

/// Symbols of the orientation ordering.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum OrSym {
    /// Composite output edge, indexed by its position around the base diagram.
    Out(usize),
    /// The internal edge from `psi` to `phi`.
    Internal,
    Phi,
    Psi,
}

/// Symbols of the evaluation string.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum EvSym {
    In(usize),      // position in the flattened composite input string
    PsiOut(usize),  // psi's output factor
    PhiOut(usize),  // phi's output factor
}

pub fn necklace_product_oracle(
    phi: &HigherCochain,
    psi: &HigherCochain,
    basis: &GradedBasis,
    d: i64,
) -> HigherCochain {
    necklace_product_oracle_filtered(phi, psi, basis, d, |_| true)
}

pub(crate) fn necklace_product_oracle_filtered(
    phi: &HigherCochain,
    psi: &HigherCochain,
    basis: &GradedBasis,
    d: i64,
    keep: impl Fn(usize) -> bool,
) -> HigherCochain {
    let (k, l) = (phi.outputs(), psi.outputs());
    let big_k = k + l - 1;
    let mut out = HigherCochain::zero(big_k, phi.bar() + psi.bar());

    let w_edge = d - 1;
    let w_phi = d + phi.norm(d);
    let w_psi = d + psi.norm(d);
    let weight = |s: OrSym| -> i64 {
        match s {
            OrSym::Out(_) | OrSym::Internal => w_edge,
            OrSym::Phi => w_phi,
            OrSym::Psi => w_psi,
        }
    };

    // normal form: phi's out-edge block, phi, psi's out-edge block (internal
    // edge first), psi
    let mut normal: Vec<OrSym> = (0..k).map(OrSym::Out).collect();
    normal.push(OrSym::Phi);
    normal.push(OrSym::Internal);
    normal.extend((k..big_k).map(OrSym::Out));
    normal.push(OrSym::Psi);

    for rot in 0..big_k {
        if !keep(rot) {
            continue;
        }
        // ordering (e_rot e_{rot+1} ... phi e psi)
        let mut ordering: Vec<OrSym> = (0..big_k).map(|j| OrSym::Out((j + rot) % big_k)).collect();
        ordering.push(OrSym::Phi);
        ordering.push(OrSym::Internal);
        ordering.push(OrSym::Psi);
        let orient_sign = rearrangement_sign(&ordering, &normal, weight);

        for ((g, b), c_phi) in phi.components() {
            for ((h, cout), c_psi) in psi.components() {
                // psi's first output plugged into slot p of phi's last region
                for p in 0..g[k - 1].len() {
                    if g[k - 1][p] != cout[0] {
                        continue;
                    }
                    let (key, ev_sign) =
                        eval_rotated(basis, g, b, h, cout, p, k, l, rot);
                    out.components
                        .add(key, c_phi * c_psi * ev_sign * orient_sign.clone());
                }
            }
        }
    }
    out
}

/// Evaluates the base diagram (attachment at `phi`'s last region, slot `p`)
/// with the composite outputs and input groups rotated so that base output
/// `rot` is read first.
#[allow(clippy::too_many_arguments)]
fn eval_rotated(
    basis: &GradedBasis,
    g: &Groups,
    b: &OutTuple,
    h: &Groups,
    cout: &OutTuple,
    p: usize,
    k: usize,
    l: usize,
    rot: usize,
) -> ((Groups, OutTuple), Scalar) {
    let big_k = k + l - 1;

    // base composite groups (position j follows base output j) and outputs
    let mut base_groups: Vec<Vec<BasisId>> = Vec::with_capacity(big_k);
    for j in 0..k - 1 {
        base_groups.push(g[j].clone());
    }
    if l == 1 {
        let mut grp = g[k - 1][..p].to_vec();
        grp.extend_from_slice(&h[0]);
        grp.extend_from_slice(&g[k - 1][p + 1..]);
        base_groups.push(grp);
    } else {
        let mut grp = g[k - 1][..p].to_vec();
        grp.extend_from_slice(&h[0]);
        base_groups.push(grp);
        for t in 1..l - 1 {
            base_groups.push(h[t].clone());
        }
        let mut grp = h[l - 1].clone();
        grp.extend_from_slice(&g[k - 1][p + 1..]);
        base_groups.push(grp);
    }
    let mut base_outs: Vec<BasisId> = b.clone();
    base_outs.extend_from_slice(&cout[1..]);

    // owners of each input position, for routing back to the two vertices
    #[derive(Clone, Copy, PartialEq, Eq)]
    enum Owner {
        Phi(usize, usize), // group, slot
        Psi(usize, usize),
    }
    let mut base_owner: Vec<Vec<Owner>> = Vec::with_capacity(big_k);
    {
        let mut push_grp = |items: Vec<Owner>| base_owner.push(items);
        for j in 0..k - 1 {
            push_grp((0..g[j].len()).map(|i| Owner::Phi(j, i)).collect());
        }
        if l == 1 {
            let mut grp: Vec<Owner> = (0..p).map(|i| Owner::Phi(k - 1, i)).collect();
            grp.extend((0..h[0].len()).map(|i| Owner::Psi(0, i)));
            grp.extend((p + 1..g[k - 1].len()).map(|i| Owner::Phi(k - 1, i)));
            push_grp(grp);
        } else {
            let mut grp: Vec<Owner> = (0..p).map(|i| Owner::Phi(k - 1, i)).collect();
            grp.extend((0..h[0].len()).map(|i| Owner::Psi(0, i)));
            push_grp(grp);
            for t in 1..l - 1 {
                push_grp((0..h[t].len()).map(|i| Owner::Psi(t, i)).collect());
            }
            let mut grp: Vec<Owner> = (0..h[l - 1].len()).map(|i| Owner::Psi(l - 1, i)).collect();
            grp.extend((p + 1..g[k - 1].len()).map(|i| Owner::Phi(k - 1, i)));
            push_grp(grp);
        }
    }

    // rotate: output j of the term is base output (j + rot) mod K
    let rot_groups: Groups = (0..big_k)
        .map(|j| base_groups[(j + rot) % big_k].clone())
        .collect();
    let rot_owner: Vec<Vec<Owner>> = (0..big_k)
        .map(|j| base_owner[(j + rot) % big_k].clone())
        .collect();
    let rot_outs: OutTuple = (0..big_k).map(|j| base_outs[(j + rot) % big_k]).collect();

    // the evaluation string: flattened rotated input groups
    let flat_owner: Vec<Owner> = rot_owner.iter().flatten().copied().collect();
    let flat_ids: Vec<BasisId> = rot_groups.iter().flatten().copied().collect();
    let bar_of = |s: EvSym| -> i64 {
        match s {
            EvSym::In(i) => basis.bar(flat_ids[i]),
            EvSym::PsiOut(i) => basis.bar(cout[i]),
            EvSym::PhiOut(i) => basis.bar(b[i]),
        }
    };

    let s0: Vec<EvSym> = (0..flat_owner.len()).map(EvSym::In).collect();

    // step 1: bring psi's inputs to the front, in psi's own order
    let psi_pos = |grp: usize, slot: usize| -> EvSym {
        let idx = flat_owner
            .iter()
            .position(|&o| o == Owner::Psi(grp, slot))
            .expect("psi input present");
        EvSym::In(idx)
    };
    let mut s1: Vec<EvSym> = Vec::new();
    for t in 0..l {
        for i in 0..h[t].len() {
            s1.push(psi_pos(t, i));
        }
    }
    let n_psi = s1.len();
    let rest: Vec<EvSym> = s0.iter().copied().filter(|s| !s1.contains(s)).collect();
    s1.extend(rest);
    let mut sign = rearrangement_sign(&s0, &s1, bar_of);

    // evaluate psi: inputs at the front are replaced by its outputs
    let mut s2: Vec<EvSym> = (0..l).map(EvSym::PsiOut).collect();
    s2.extend(s1[n_psi..].iter().copied());

    // step 2: bring phi's inputs to the front, in phi's order; the consumed
    // slot holds psi's first output
    let phi_pos = |grp: usize, slot: usize| -> EvSym {
        if grp == k - 1 && slot == p {
            return EvSym::PsiOut(0);
        }
        let idx = flat_owner
            .iter()
            .position(|&o| o == Owner::Phi(grp, slot))
            .expect("phi input present");
        EvSym::In(idx)
    };
    let mut t1: Vec<EvSym> = Vec::new();
    for grp in 0..k {
        for slot in 0..g[grp].len() {
            t1.push(phi_pos(grp, slot));
        }
    }
    let n_phi = t1.len();
    // the rest keeps its current relative order
    let rest: Vec<EvSym> = s2.iter().copied().filter(|s| !t1.contains(s)).collect();
    t1.extend(rest);
    sign = sign * rearrangement_sign(&s2, &t1, bar_of);

    // evaluate phi
    let mut s3: Vec<EvSym> = (0..k).map(EvSym::PhiOut).collect();
    s3.extend(t1[n_phi..].iter().copied());

    // step 3: reorder the outputs to the rotated composite order
    let target: Vec<EvSym> = (0..big_k)
        .map(|j| {
            let base_idx = (j + rot) % big_k;
            if base_idx < k {
                EvSym::PhiOut(base_idx)
            } else {
                EvSym::PsiOut(base_idx - k + 1)
            }
        })
        .collect();
    sign = sign * rearrangement_sign(&s3, &target, bar_of);

    ((rot_groups, rot_outs), sign)
}
