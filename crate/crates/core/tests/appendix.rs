use saito_core::gm1n::*;

fn assert_all_match(rows: &[EntryComparison]) {
    for r in rows {
        assert!(r.matches, "{}: closed {} vs oracle {}", r.label, r.closed, r.oracle);
    }
}

#[test]
fn elementary_symmetric_matrix_against_cofactors() {
    for n in 1..=5 {
        let rows = elem_sym_suite(n).unwrap();
        assert_eq!(rows.len(), 1 + 2 * n * n);
        assert_all_match(&rows);
        assert_eq!(closed_inverse_product_check(n).unwrap(), None, "n = {n}");
        assert_eq!(elementary_recursion_check(n).unwrap(), None, "n = {n}");
        let e = elem_sym_matrix(n).unwrap();
        assert_eq!(column_independence_check(&e), None);
        assert!(e.entries.row(0).iter().all(|p| p.is_one()));
    }
}

#[test]
fn hand_computed_minors() {
    assert_eq!(closed_minor(3, 2, 2).unwrap().to_string(), "v1*v2 - v2*v3");
    assert_eq!(closed_minor(3, 1, 3).unwrap().to_string(), "v1*v3^2 - v2*v3^2");
    assert_eq!(closed_det(3).unwrap(), {
        let e = elem_sym_matrix(3).unwrap();
        cofactor_det(&e.entries).unwrap()
    });
}

#[test]
fn inverse_function_closed_forms() {
    for (m, n) in [(3, 2), (3, 3), (4, 2), (4, 3)] {
        let rows = gm1n_suite(m, n).unwrap();
        assert_eq!(rows.len(), 2 * n * n + n);
        assert_all_match(&rows);
    }
}

#[test]
fn unit_field_examples() {
    let e = closed_e_field(3, 2).unwrap();
    assert_eq!(e[0].to_string(), "-1/(3*u1^5 - 3*u1^2*u2^3)");
    let e = closed_e_field(4, 2).unwrap();
    assert_eq!(e[0].to_string(), "-1/(4*u1^7 - 4*u1^3*u2^4)");
    let d = closed_du_dx(3, 2, 1, 2).unwrap();
    assert_eq!(d.to_string(), "u1/(3*u1^3 - 3*u2^3)");
}
