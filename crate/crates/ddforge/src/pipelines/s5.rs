//! Generalized Hadamard construction: q divisible design digraphs on
//! (q+1)q^2 vertices from the multiplication table of GF(q) and a
//! symmetric Latin square, with a commutative (3q-2)-class scheme and
//! its primitive idempotents.

use crate::ddd::{derive_ddd_params, verify_ddd, DDDParams};
use crate::error::{Error, Result};
use crate::exact::{rat, rat_int, CycloNumber};
use crate::galois::{build_field, FieldSpec};
use crate::matrix::IntMatrix;
use crate::pipelines::check_matrix_eq;
use crate::report::VerificationReport;
use crate::scheme::{
    verify_idempotent_elements, verify_scheme, AlgebraElement, AssociationScheme,
    IntersectionTensor, Scalar,
};
use crate::seeds::{
    factor_prime_power, gh_mult_table, latin_const_diag, latin_decompose, GHMatrix, LatinSquare,
    Symbol,
};

/// Everything produced by [`build_s5`].
pub struct S5Bundle {
    pub field: FieldSpec,
    /// Multiplication table of the field as a generalized Hadamard matrix.
    pub gh: GHMatrix,
    /// Regular permutation representation of the additive group,
    /// indexed by field element.
    pub phi: Vec<IntMatrix>,
    /// The q^2 x q^2 slope blocks, indexed [slope][offset].
    pub c: Vec<Vec<IntMatrix>>,
    /// The blocks attached to the extra Latin symbol, indexed by offset.
    pub c_x: Vec<IntMatrix>,
    pub latin: LatinSquare,
    /// Permutation matrices of the finite Latin symbols.
    pub p_mats: Vec<IntMatrix>,
    /// The digraphs N_alpha, indexed by field element.
    pub n_mats: Vec<IntMatrix>,
    /// Scheme classes in (element, layer) order; layer 1 is absent for
    /// the zero element.
    pub classes: Vec<IntMatrix>,
    pub params: DDDParams,
    pub scheme: AssociationScheme,
    pub tensor: IntersectionTensor,
    /// Second eigenmatrix: rows classes, columns primitive idempotents.
    pub q_matrix: Vec<Vec<CycloNumber>>,
    pub report: VerificationReport,
}

/// Build and verify the full construction on (q+1)q^2 vertices.
pub fn build_s5(q: u64) -> Result<S5Bundle> {
    let (p0, pm) = factor_prime_power(q)
        .ok_or_else(|| Error::BadParameter(format!("q = {q} is not a prime power")))?;
    if p0 == 2 {
        return Err(Error::BadParameter(format!(
            "q = {q} must be an odd prime power: the additive character sums require odd \
             characteristic"
        )));
    }
    let field = build_field(p0, pm)?;
    let qi = q as usize;
    let v = (qi + 1) * qi * qi;
    let mut report = VerificationReport::new();

    // seed designs
    let gh = gh_mult_table(&field)?;
    report.pass("gh-seed");
    let phi: Vec<IntMatrix> = (0..qi).map(|i| field.phi_rep(&field.element(i))).collect();
    let latin = latin_const_diag(&field)?;
    latin.verify()?;
    report.pass("latin-seed");
    let decomposition = latin_decompose(&latin)?;
    let p_x = decomposition
        .get(&Symbol::X)
        .ok_or_else(|| Error::VerificationFailed("missing diagonal Latin symbol".into()))?;
    report.check(
        "latin-diagonal-identity",
        *p_x == IntMatrix::identity(qi + 1),
        "the extra symbol does not sit on the diagonal",
    );
    let p_mats: Vec<IntMatrix> = (0..qi)
        .map(|a| {
            decomposition
                .get(&Symbol::Elem(a))
                .cloned()
                .ok_or_else(|| Error::VerificationFailed(format!("missing Latin symbol {a}")))
        })
        .collect::<Result<_>>()?;

    // slope blocks: block (b, b') of c[a][alpha] is phi(a(b'-b)+alpha)
    let neg = |i: usize| field.index(&field.neg(&field.element(i)));
    let add_idx = |i: usize, j: usize| field.index(&field.add(&field.element(i), &field.element(j)));
    let j_q = IntMatrix::all_ones(qi);
    let mut c = Vec::with_capacity(qi);
    for a in 0..qi {
        let a_el = field.element(a);
        let mut per_offset = Vec::with_capacity(qi);
        for alpha in 0..qi {
            let alpha_el = field.element(alpha);
            let mut grid = Vec::with_capacity(qi);
            for b in 0..qi {
                let b_el = field.element(b);
                let mut row = Vec::with_capacity(qi);
                for b2 in 0..qi {
                    let diff = field.sub(&field.element(b2), &b_el);
                    let idx = field.index(&field.add(&field.mul(&a_el, &diff), &alpha_el));
                    row.push(phi[idx].clone());
                }
                grid.push(row);
            }
            per_offset.push(IntMatrix::block_assemble(&grid)?);
        }
        c.push(per_offset);
    }
    let c_x: Vec<IntMatrix> = (0..qi).map(|alpha| phi[alpha].kron(&j_q)).collect();

    // identities of the slope blocks
    let j_q2 = IntMatrix::all_ones(qi * qi);
    let mut transpose_ok = true;
    for a in 0..qi {
        for alpha in 0..qi {
            transpose_ok &= c[a][alpha].transpose() == c[a][neg(alpha)];
        }
    }
    for alpha in 0..qi {
        transpose_ok &= c_x[alpha].transpose() == c_x[neg(alpha)];
    }
    report.check("slope-transpose", transpose_ok, "C_(a,alpha)^T != C_(a,-alpha)");

    let mut row_sum_ok = true;
    for a in 0..qi {
        let total = c[a]
            .iter()
            .try_fold(IntMatrix::zeros(qi * qi, qi * qi), |acc, x| acc.add(x))?;
        row_sum_ok &= total == j_q2;
    }
    let total_x = c_x
        .iter()
        .try_fold(IntMatrix::zeros(qi * qi, qi * qi), |acc, x| acc.add(x))?;
    row_sum_ok &= total_x == j_q2;
    report.check("slope-offset-sum", row_sum_ok, "sum over offsets is not all-ones");

    let off_diag_q = j_q.sub(&IntMatrix::identity(qi))?;
    let mut slope_sum_ok = true;
    for alpha in 0..qi {
        let mut total = IntMatrix::zeros(qi * qi, qi * qi);
        for a in 0..qi {
            total = total.add(&c[a][alpha])?;
        }
        let want = IntMatrix::identity(qi)
            .kron(&phi[alpha].scale(q as i64)?)
            .add(&off_diag_q.kron(&j_q))?;
        slope_sum_ok &= total == want;
    }
    report.check("slope-sum", slope_sum_ok, "sum over slopes has the wrong block structure");

    let mut same_slope_ok = true;
    for a in 0..qi {
        for alpha in 0..qi {
            for alpha2 in 0..qi {
                let got = c[a][alpha].mul(&c[a][alpha2])?;
                same_slope_ok &= got == c[a][add_idx(alpha, alpha2)].scale(q as i64)?;
            }
        }
    }
    report.check(
        "same-slope-product",
        same_slope_ok,
        "C_(a,alpha) C_(a,alpha') != q C_(a,alpha+alpha')",
    );

    let mut cross_slope_ok = true;
    for a in 0..qi {
        for a2 in 0..qi {
            if a == a2 {
                continue;
            }
            for alpha in 0..qi {
                for alpha2 in 0..qi {
                    cross_slope_ok &= c[a][alpha].mul(&c[a2][alpha2])? == j_q2;
                }
            }
        }
    }
    report.check(
        "cross-slope-product",
        cross_slope_ok,
        "blocks of different slopes do not smear to all-ones",
    );

    let mut smear_ok = true;
    for alpha in 0..qi {
        for a in 0..qi {
            for alpha2 in 0..qi {
                smear_ok &= c_x[alpha].mul(&c[a][alpha2])? == j_q2;
                smear_ok &= c[a][alpha2].mul(&c_x[alpha])? == j_q2;
            }
        }
    }
    report.check(
        "diagonal-block-smear",
        smear_ok,
        "extra-symbol blocks do not smear finite-slope blocks",
    );

    let mut latin_cross = IntMatrix::zeros(qi + 1, qi + 1);
    for a in 0..qi {
        for b in 0..qi {
            if a == b {
                continue;
            }
            latin_cross = latin_cross.add(&p_mats[a].mul(&p_mats[b])?)?;
        }
    }
    let want_cross = IntMatrix::all_ones(qi + 1)
        .sub(&IntMatrix::identity(qi + 1))?
        .scale(q as i64 - 1)?;
    check_matrix_eq(&mut report, "latin-cross-products", &latin_cross, &want_cross);

    // the digraphs
    let mut n_mats = Vec::with_capacity(qi);
    for alpha in 0..qi {
        let mut acc = IntMatrix::identity(qi + 1).kron(&c_x[alpha]);
        for a in 0..qi {
            acc = acc.add(&p_mats[a].kron(&c[a][alpha]))?;
        }
        n_mats.push(acc);
    }

    let total = n_mats
        .iter()
        .try_fold(IntMatrix::zeros(v, v), |acc, x| acc.add(x))?;
    check_matrix_eq(&mut report, "digraph-sum", &total, &IntMatrix::all_ones(v));

    let mut n_transpose_ok = true;
    for alpha in 0..qi {
        n_transpose_ok &= n_mats[alpha].transpose() == n_mats[neg(alpha)];
    }
    report.check("digraph-transpose", n_transpose_ok, "N_alpha^T != N_(-alpha)");

    // pairwise products, against the form the proof actually yields
    let j_off = IntMatrix::all_ones(qi + 1)
        .sub(&IntMatrix::identity(qi + 1))?
        .kron(&j_q2);
    let mut product_ok = true;
    let mut product_witness = String::new();
    for alpha in 0..qi {
        for beta in 0..qi {
            let s = add_idx(alpha, beta);
            let want = IntMatrix::identity(qi + 1)
                .kron(&IntMatrix::identity(qi).kron(&phi[s]).scale((q * q) as i64)?)
                .add(
                    &IntMatrix::identity(qi + 1)
                        .kron(&phi[s].sub(&IntMatrix::identity(qi))?.kron(&j_q).scale(q as i64)?),
                )?
                .add(&IntMatrix::identity(qi + 1).kron(&j_q2.scale(q as i64)?))?
                .add(&j_off.scale(q as i64 + 1)?)?;
            let got = n_mats[alpha].mul(&n_mats[beta])?;
            if let Some((r, cc, g, w)) = got.first_diff(&want) {
                product_ok = false;
                product_witness =
                    format!("N_{alpha} N_{beta} at ({r},{cc}): computed {g}, expected {w}");
            }
        }
    }
    report.check("digraph-product", product_ok, product_witness);
    if product_ok {
        report.mismatch(
            "product-display",
            "the stated pairwise product ends in (q+1)J; the computed product ends in \
             (q+1)(J - I) (x) J_(q^2), differing by (q+1) I (x) J_(q^2) on the diagonal blocks",
        );
    }

    // divisible design digraph verification for every nonzero offset
    let params = derive_ddd_params(&n_mats[1], q + 1, q * q)?;
    report.derived(
        "ddd-parameters",
        [params.v, params.k, params.lambda1, params.lambda2, params.m, params.n],
    );
    let stated = [(q + 1) * q * q, (q + 1) * (q + 1), 2 * q + 1, q + 1, q + 1, q * q];
    report.claim("theorem-parameter-tuple", stated);
    let derived = [params.v, params.k, params.lambda1, params.lambda2, params.m, params.n];
    if derived == stated {
        report.pass("theorem-parameter-display");
    } else {
        report.mismatch(
            "theorem-parameter-display",
            format!("derived {derived:?} differs from the stated tuple {stated:?}"),
        );
    }
    report.merge("ddd-n1", verify_ddd(&n_mats[1], &params)?);
    let mut family_ok = true;
    for alpha in 2..qi {
        if !verify_ddd(&n_mats[alpha], &params)?.is_verified() {
            report.fail("ddd-family", format!("N_{alpha} fails with the shared parameters"));
            family_ok = false;
        }
    }
    if family_ok {
        report.pass("ddd-family");
    }

    // the zero-offset digraph carries loops and is kept as reported data
    report.check("loop-digraph-symmetric", n_mats[0].is_symmetric(), "N_0 is not symmetric");
    report.check(
        "loop-digraph-unit-diagonal",
        n_mats[0].diag().iter().all(|&d| d == 1),
        "N_0 does not have an all-ones diagonal",
    );

    // scheme classes in (element, layer) order; the zero element skips
    // layer 1 because that matrix decomposes into the layer-0 classes
    let a0: Vec<IntMatrix> = (0..qi)
        .map(|alpha| IntMatrix::identity(qi * (qi + 1)).kron(&phi[alpha]))
        .collect();
    let a1: Vec<IntMatrix> = (0..qi)
        .map(|alpha| IntMatrix::identity(qi + 1).kron(&c_x[alpha]))
        .collect();
    let a2: Vec<IntMatrix> = (0..qi)
        .map(|alpha| n_mats[alpha].sub(&a1[alpha]))
        .collect::<Result<_>>()?;
    let zero_fusion = a0
        .iter()
        .try_fold(IntMatrix::zeros(v, v), |acc, x| acc.add(x))?;
    check_matrix_eq(&mut report, "layer-one-zero-decomposes", &a1[0], &zero_fusion);

    let mut classes = Vec::new();
    let mut labels = Vec::new();
    let mut class_of = vec![[None::<usize>; 3]; qi];
    for alpha in 0..qi {
        class_of[alpha][0] = Some(classes.len());
        classes.push(a0[alpha].clone());
        labels.push(format!("A[{alpha},0]"));
        if alpha != 0 {
            class_of[alpha][1] = Some(classes.len());
            classes.push(a1[alpha].clone());
            labels.push(format!("A[{alpha},1]"));
        }
        class_of[alpha][2] = Some(classes.len());
        classes.push(a2[alpha].clone());
        labels.push(format!("A[{alpha},2]"));
    }
    let outcome = verify_scheme(&classes)?;
    report.merge("scheme", outcome.report);
    let tensor = outcome
        .tensor
        .ok_or_else(|| Error::VerificationFailed("scheme axioms failed".into()))?;
    report.derived("scheme-classes", tensor.d());
    report.check("commutative", tensor.is_commutative(), "scheme is not commutative");

    // character-sum family F and its multiplication rules
    let d1 = tensor.classes();
    let chi = |alpha: usize, gamma: usize| -> CycloNumber {
        field.add_character(&field.element(alpha), &field.element(gamma))
    };
    let f = |alpha: usize, layer: usize| -> AlgebraElement<CycloNumber> {
        let mut coords = vec![<CycloNumber as Scalar>::zero(); d1];
        match layer {
            1 => {
                // the zero-offset layer-1 matrix is the sum of all
                // layer-0 classes
                for delta in 0..qi {
                    coords[class_of[delta][0].unwrap()] = <CycloNumber as Scalar>::one();
                }
                for gamma in 1..qi {
                    coords[class_of[gamma][1].unwrap()] = chi(alpha, gamma);
                }
            }
            _ => {
                for gamma in 0..qi {
                    coords[class_of[gamma][layer].unwrap()] = chi(alpha, gamma);
                }
            }
        }
        AlgebraElement::from_coords(coords)
    };
    let qr = rat_int(q as i64);
    let q2r = rat_int((q * q) as i64);
    let mut f_ok = [true; 6];
    let mut f_witness = String::new();
    for alpha in 0..qi {
        for beta in 0..qi {
            let d_eq = alpha == beta;
            let d00 = alpha == 0 && beta == 0;
            let zero = || AlgebraElement::zero(d1);
            let checks: [(usize, AlgebraElement<CycloNumber>, AlgebraElement<CycloNumber>); 6] = [
                (0, f(alpha, 0).mul(&f(beta, 0), &tensor), {
                    if d_eq { f(alpha, 0).scale_rat(&qr) } else { zero() }
                }),
                (1, f(alpha, 0).mul(&f(beta, 1), &tensor), {
                    if alpha == 0 { f(beta, 1).scale_rat(&qr) } else { zero() }
                }),
                (2, f(alpha, 0).mul(&f(beta, 2), &tensor), {
                    if d_eq { f(alpha, 2).scale_rat(&qr) } else { zero() }
                }),
                (3, f(alpha, 1).mul(&f(beta, 1), &tensor), {
                    if d_eq { f(alpha, 1).scale_rat(&q2r) } else { zero() }
                }),
                (4, f(alpha, 1).mul(&f(beta, 2), &tensor), {
                    if d00 { f(0, 2).scale_rat(&q2r) } else { zero() }
                }),
                (5, f(alpha, 2).mul(&f(beta, 2), &tensor), {
                    let mut want = zero();
                    if d_eq {
                        want = want.add(&f(alpha, 0).scale_rat(&(qr.clone() * &q2r)));
                    }
                    if d00 {
                        let inner = f(0, 0)
                            .scale_rat(&rat_int(-(q as i64)))
                            .add(&f(0, 1).scale_rat(&qr))
                            .add(&f(0, 2).scale_rat(&rat_int(q as i64 - 1)));
                        want = want.add(&inner.scale_rat(&q2r));
                    }
                    want
                }),
            ];
            for (which, got, want) in checks {
                if !got.equals(&want) {
                    f_ok[which] = false;
                    f_witness = format!("(alpha,beta) = ({alpha},{beta})");
                }
            }
        }
    }
    for (which, name) in [
        "f-product-00",
        "f-product-01",
        "f-product-02",
        "f-product-11",
        "f-product-12",
        "f-product-22",
    ]
    .iter()
    .enumerate()
    {
        report.check(*name, f_ok[which], f_witness.clone());
    }

    // primitive idempotent candidates
    let vr = rat_int(v as i64);
    let mut elems = vec![
        f(0, 1).add(&f(0, 2)).scale_rat(&vr.recip()),
        f(0, 1).scale_rat(&qr).sub(&f(0, 2)).scale_rat(&vr.recip()),
    ];
    let mut names = vec!["E0".to_string(), "E1".to_string()];
    for beta in 1..qi {
        elems.push(f(beta, 1).scale_rat(&q2r.recip()));
        names.push(format!("E[{beta},2]"));
        let plus = f(beta, 0).scale_rat(&qr).add(&f(beta, 2));
        let minus = f(beta, 0).scale_rat(&qr).sub(&f(beta, 2));
        let half = rat(1, 2 * (q * q) as i64);
        elems.push(plus.scale_rat(&half));
        names.push(format!("E[{beta},3]"));
        elems.push(minus.scale_rat(&half));
        names.push(format!("E[{beta},4]"));
    }
    report.merge("idempotents", verify_idempotent_elements(&tensor, &elems, &names));

    // second eigenmatrix, compared entrywise against the display
    let q_matrix: Vec<Vec<CycloNumber>> = (0..d1)
        .map(|j| elems.iter().map(|e| e.coords[j].scale(&vr)).collect())
        .collect();
    let half_np1 = rat((q as i64 + 1) * q as i64, 2);
    let half_p1 = rat(q as i64 + 1, 2);
    let mut claimed: Vec<Vec<CycloNumber>> = Vec::new();
    for alpha in 0..qi {
        for layer in [0usize, 1, 2] {
            if layer == 1 && alpha == 0 {
                continue;
            }
            let mut row = vec![<CycloNumber as Scalar>::one()];
            match layer {
                0 => {
                    row.push(CycloNumber::from_int(q as i64));
                    for beta in 1..qi {
                        row.push(CycloNumber::from_int(q as i64 + 1));
                        let e = chi(alpha, beta).scale(&half_np1);
                        row.push(e.clone());
                        row.push(e);
                    }
                }
                1 => {
                    row.push(CycloNumber::from_int(q as i64));
                    for beta in 1..qi {
                        row.push(chi(alpha, beta).scale(&rat_int(q as i64 + 1)));
                        row.push(<CycloNumber as Scalar>::zero());
                        row.push(<CycloNumber as Scalar>::zero());
                    }
                }
                _ => {
                    row.push(CycloNumber::from_int(-1));
                    for beta in 1..qi {
                        row.push(<CycloNumber as Scalar>::zero());
                        let e = chi(alpha, beta).scale(&half_p1);
                        row.push(e.clone());
                        row.push(e.neg());
                    }
                }
            }
            claimed.push(row);
        }
    }
    let diff = q_matrix
        .iter()
        .flatten()
        .zip(claimed.iter().flatten())
        .position(|(a, b)| !a.sub(b).is_zero_exact());
    match diff {
        None => report.pass("q-display-match"),
        Some(at) => report.mismatch(
            "q-display-match",
            format!("entry {at} of the second eigenmatrix differs from the display"),
        ),
    }

    let scheme = AssociationScheme::new(classes.clone(), labels)?;
    Ok(S5Bundle {
        field,
        gh,
        phi,
        c,
        c_x,
        latin,
        p_mats,
        n_mats,
        classes,
        params,
        scheme,
        tensor,
        q_matrix,
        report,
    })
}
