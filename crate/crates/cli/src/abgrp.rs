//! Group-algebra utilities exposed as `abgrp` subcommands: Smith normal
//! form, cyclic decompositions, kernel/cokernel indices, quotients,
//! completions, summand complements, lifting, and the seeded self-test
//! suites.

use num_bigint::BigInt;
use serde_json::json;

use zetaval_core::abelian::hom::{cyclic_decomposition, z_value, GroupHom};
use zetaval_core::abelian::lift::{lift_idempotent, lift_unit, MatrixRingElement};
use zetaval_core::abelian::snf::{smith_normal_form, IntMat};
use zetaval_core::abelian::suite;
use zetaval_core::abelian::{
    complement, l_adic_completion, ulm_and_divisible, AbError, AbGroup,
};

#[derive(Debug)]
pub struct AbgrpError {
    pub exit_code: i32,
    pub message: String,
}

fn bad_input(msg: impl Into<String>) -> AbgrpError {
    AbgrpError {
        exit_code: 2,
        message: msg.into(),
    }
}

fn map_ab_error(e: AbError) -> AbgrpError {
    let exit_code = match &e {
        AbError::HypothesisFailed(_)
        | AbError::NotIdempotentModP
        | AbError::NotUnitModP => 5,
        AbError::NotFinite => 4,
        AbError::TooLarge { .. } => 3,
        AbError::NotFinitelyGenerated
        | AbError::DimensionMismatch { .. }
        | AbError::InvalidHom(_) => 2,
        AbError::Internal(_) => 1,
    };
    AbgrpError {
        exit_code,
        message: e.to_string(),
    }
}

/// Row-major integer matrix: rows separated by ';', entries by ','.
pub fn parse_matrix(text: &str) -> Result<IntMat, AbgrpError> {
    let rows: Vec<Vec<BigInt>> = text
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|e| {
                    e.trim()
                        .parse::<BigInt>()
                        .map_err(|_| bad_input(format!("invalid matrix entry {:?}", e.trim())))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let width = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != width) {
        return Err(bad_input("ragged matrix rows"));
    }
    Ok(IntMat::from_rows(rows))
}

/// Generator vectors: vectors separated by ';', coordinates by ','.
pub fn parse_generators(text: &str) -> Result<Vec<Vec<u64>>, AbgrpError> {
    if text.trim().is_empty() {
        return Ok(vec![]);
    }
    text.split(';')
        .map(|row| {
            row.split(',')
                .map(|e| {
                    e.trim()
                        .parse::<u64>()
                        .map_err(|_| bad_input(format!("invalid coordinate {:?}", e.trim())))
                })
                .collect()
        })
        .collect()
}

/// Group spec grammar: terms joined by '+', each one of
///   Z | Z^a | Q | Q^b | Z/n | Q<l>/Z<l> | Q<l>/Z<l>^c
/// (underscores in Q_l/Z_l are accepted).
pub fn parse_group(text: &str) -> Result<AbGroup, AbgrpError> {
    let mut free = 0u64;
    let mut rational = 0u64;
    let mut torsion: Vec<BigInt> = Vec::new();
    let mut cof: std::collections::BTreeMap<u64, u64> = Default::default();
    for raw in text.split('+') {
        let tok: String = raw.chars().filter(|c| !c.is_whitespace() && *c != '_').collect();
        if tok.is_empty() {
            return Err(bad_input("empty group term"));
        }
        if tok == "0" {
            continue;
        }
        if let Some(rest) = tok.strip_prefix("Z/") {
            let n: BigInt = rest
                .parse()
                .map_err(|_| bad_input(format!("invalid torsion order {:?}", rest)))?;
            if n < BigInt::from(2) {
                return Err(bad_input("torsion order must be >= 2"));
            }
            torsion.push(n);
            continue;
        }
        if let Some(rest) = tok.strip_prefix('Z') {
            free += parse_power(rest)?;
            continue;
        }
        if let Some(rest) = tok.strip_prefix('Q') {
            // Q, Q^b, or Q<l>/Z<l>(^c).
            if let Some(slash) = rest.find('/') {
                let l: u64 = rest[..slash]
                    .parse()
                    .map_err(|_| bad_input(format!("invalid prime in {:?}", tok)))?;
                let tail = &rest[slash + 1..];
                let Some(tail) = tail.strip_prefix('Z') else {
                    return Err(bad_input(format!("expected Q{l}/Z{l} in {:?}", tok)));
                };
                let Some(tail) = tail.strip_prefix(&l.to_string()) else {
                    return Err(bad_input(format!("mismatched primes in {:?}", tok)));
                };
                let c = parse_power(tail)?;
                if !zetaval_core::finite_field::is_prime(l) {
                    return Err(bad_input(format!("{} is not prime", l)));
                }
                *cof.entry(l).or_insert(0) += c;
                continue;
            }
            rational += parse_power(rest)?;
            continue;
        }
        return Err(bad_input(format!("unrecognized group term {:?}", raw.trim())));
    }
    Ok(AbGroup::new(free, rational, torsion, cof))
}

fn parse_power(rest: &str) -> Result<u64, AbgrpError> {
    if rest.is_empty() {
        return Ok(1);
    }
    let Some(exp) = rest.strip_prefix('^') else {
        return Err(bad_input(format!("unexpected suffix {:?}", rest)));
    };
    exp.parse()
        .map_err(|_| bad_input(format!("invalid exponent {:?}", exp)))
}

fn mat_json(m: &IntMat) -> serde_json::Value {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect();
    json!(rows)
}

fn mat_text(m: &IntMat) -> String {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| m.get(i, j).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub struct Rendered {
    pub text: String,
    pub json: serde_json::Value,
}

pub fn run_snf(matrix: &str) -> Result<Rendered, AbgrpError> {
    let m = parse_matrix(matrix)?;
    let snf = smith_normal_form(&m);
    let text = format!(
        "D =\n{}\nU =\n{}\nV =\n{}\ninvariant factors: {}",
        mat_text(&snf.d),
        mat_text(&snf.u),
        mat_text(&snf.v),
        snf.invariant_factors()
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    let json = json!({
        "d": mat_json(&snf.d),
        "u": mat_json(&snf.u),
        "v": mat_json(&snf.v),
        "invariant_factors": snf.invariant_factors().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
    });
    Ok(Rendered { text, json })
}

pub fn run_cyclic(matrix: &str) -> Result<Rendered, AbgrpError> {
    let m = parse_matrix(matrix)?;
    let factors = cyclic_decomposition(&m).map_err(map_ab_error)?;
    let strs: Vec<String> = factors.iter().map(|d| d.to_string()).collect();
    Ok(Rendered {
        text: format!(
            "cyclic decomposition: {}",
            if strs.is_empty() {
                "trivial group".to_string()
            } else {
                strs.join(", ")
            }
        ),
        json: json!({ "cyclic_orders": strs }),
    })
}

pub fn run_zvalue(source: &str, target: &str, matrix: &str) -> Result<Rendered, AbgrpError> {
    let s = parse_group(source)?;
    let t = parse_group(target)?;
    let m = parse_matrix(matrix)?;
    let hom = GroupHom::new(s, t, m).map_err(map_ab_error)?;
    let z = z_value(&hom).map_err(map_ab_error)?;
    Ok(Rendered {
        text: format!("z(f) = [Ker]/[Coker] = {}", z),
        json: json!({
            "z": { "num": z.numer().to_string(), "den": z.denom().to_string() },
        }),
    })
}

pub fn run_quotient(group: &str, n: &str) -> Result<Rendered, AbgrpError> {
    let g = parse_group(group)?;
    let n: BigInt = n
        .parse()
        .map_err(|_| bad_input(format!("invalid modulus {:?}", n)))?;
    if n < BigInt::from(1) {
        return Err(bad_input("modulus must be >= 1"));
    }
    let q = g.quotient_mod_n(&n);
    let t = g.tate_module_ranks();
    Ok(Rendered {
        text: format!(
            "G/{}G = {}\nTate module ranks: {:?}",
            n,
            q,
            t.iter().map(|(l, c)| format!("Z_{}^{}", l, c)).collect::<Vec<_>>()
        ),
        json: json!({
            "quotient": q.to_string(),
            "quotient_invariant_factors": q.invariant_factors().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "tate_ranks": t,
        }),
    })
}

pub fn run_ulm(group: &str) -> Result<Rendered, AbgrpError> {
    let g = parse_group(group)?;
    let rep = ulm_and_divisible(&g);
    Ok(Rendered {
        text: format!(
            "U(G) = {}\ndivisible part = {}\nidentity U(G) = G_div: {}\nuniquely divisible: {}",
            rep.ulm,
            rep.divisible,
            if rep.identity_holds { "holds" } else { "FAILS" },
            match rep.uniquely_divisible {
                Some(true) => "yes",
                Some(false) => "no",
                None => "not applicable (TG != 0)",
            }
        ),
        json: json!({
            "ulm": rep.ulm.to_string(),
            "divisible": rep.divisible.to_string(),
            "identity_holds": rep.identity_holds,
            "uniquely_divisible": rep.uniquely_divisible,
        }),
    })
}

pub fn run_completion(group: &str, l: u64) -> Result<Rendered, AbgrpError> {
    if !zetaval_core::finite_field::is_prime(l) {
        return Err(bad_input(format!("{} is not prime", l)));
    }
    let g = parse_group(group)?;
    let c = l_adic_completion(&g, l);
    Ok(Rendered {
        text: format!(
            "{}-adic completion: free rank {} over Z_{}, finite part [{}]",
            l,
            c.free_rank,
            l,
            c.finite_part
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ),
        json: json!({
            "l": l,
            "free_rank": c.free_rank,
            "finite_part": c.finite_part.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        }),
    })
}

pub fn run_complement(
    group: &str,
    gens: &str,
    l: u64,
    n: u32,
    cap: u64,
) -> Result<Rendered, AbgrpError> {
    if !zetaval_core::finite_field::is_prime(l) {
        return Err(bad_input(format!("{} is not prime", l)));
    }
    let g = parse_group(group)?;
    let m = parse_generators(gens)?;
    let c = complement::summand_complement(&g, &m, l, n, cap).map_err(map_ab_error)?;
    Ok(Rendered {
        text: format!(
            "complement generators (coordinates of {}): {:?}\norder {}, structure [{}]",
            g,
            c.generators,
            c.order,
            c.structure
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ),
        json: json!({
            "generators": c.generators,
            "order": c.order,
            "structure": c.structure.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        }),
    })
}

fn parse_ring_matrix(p: u64, s: u32, matrix: &str) -> Result<MatrixRingElement, AbgrpError> {
    if !zetaval_core::finite_field::is_prime(p) {
        return Err(bad_input(format!("{} is not prime", p)));
    }
    let m = parse_matrix(matrix)?;
    if m.rows() != m.cols() {
        return Err(bad_input("matrix must be square"));
    }
    let entries: Vec<BigInt> = (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .map(|(i, j)| m.get(i, j).clone())
        .collect();
    Ok(MatrixRingElement::new(m.rows(), p, s, entries))
}

pub fn run_liftidem(p: u64, s: u32, matrix: &str) -> Result<Rendered, AbgrpError> {
    let a = parse_ring_matrix(p, s, matrix)?;
    let lifted = lift_idempotent(&a).map_err(map_ab_error)?;
    let entries: Vec<String> = lifted.entries().iter().map(|e| e.to_string()).collect();
    Ok(Rendered {
        text: format!(
            "idempotent lift mod {}^{}: [{}]",
            p,
            s,
            entries.join(", ")
        ),
        json: json!({ "size": lifted.size(), "modulus": lifted.modulus().to_string(), "entries": entries }),
    })
}

pub fn run_liftunit(p: u64, s: u32, matrix: &str) -> Result<Rendered, AbgrpError> {
    let a = parse_ring_matrix(p, s, matrix)?;
    let inv = lift_unit(&a).map_err(map_ab_error)?;
    let entries: Vec<String> = inv.entries().iter().map(|e| e.to_string()).collect();
    Ok(Rendered {
        text: format!("inverse mod {}^{}: [{}]", p, s, entries.join(", ")),
        json: json!({ "size": inv.size(), "modulus": inv.modulus().to_string(), "entries": entries }),
    })
}

pub fn run_selftest(seed: u64, scale: u32) -> Result<Rendered, AbgrpError> {
    let scale = scale.max(1) as usize;
    let outcomes = [
        suite::z_value_suite(seed, 500 * scale / 1),
        suite::complement_suite(seed.wrapping_add(1), 100 * scale),
        suite::lift_suite(seed.wrapping_add(2), 200 * scale),
        suite::class_identity_suite(seed.wrapping_add(3), 500 * scale),
        suite::pairing_embedding_suite(seed.wrapping_add(4), 200 * scale),
    ];
    let mut lines = Vec::new();
    let mut all = true;
    for o in &outcomes {
        lines.push(format!("{}", o));
        all &= o.all_passed();
    }
    lines.push(format!("selftest: {}", if all { "PASS" } else { "FAIL" }));
    let json = json!({
        "seed": seed,
        "suites": outcomes.iter().map(|o| json!({
            "name": o.name,
            "cases": o.cases,
            "failures": o.failures,
            "first_failure": o.first_failure,
        })).collect::<Vec<_>>(),
        "all_passed": all,
    });
    let rendered = Rendered {
        text: lines.join("\n"),
        json,
    };
    if all {
        Ok(rendered)
    } else {
        Err(AbgrpError {
            exit_code: 4,
            message: rendered.text,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_group_specs() {
        let g = parse_group("Z^2 + Q + Z/6 + Q5/Z5^2").unwrap();
        assert_eq!(g.free_rank(), 2);
        assert_eq!(g.rational_rank(), 1);
        assert_eq!(g.invariant_factors(), &[BigInt::from(6)]);
        assert_eq!(g.cofinite_ranks().get(&5), Some(&2));

        let h = parse_group("Q_5 / Z_5 ^ 2 + Z ^2 + Z/6 + Q").unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn snf_example() {
        let r = run_snf("2,4;6,8").unwrap();
        assert!(r.text.contains("invariant factors: 2, 4"));
    }

    #[test]
    fn zvalue_example() {
        let r = run_zvalue("Z/4", "Z/2", "1").unwrap();
        assert!(r.text.contains("= 2"));
    }

    #[test]
    fn quotient_example() {
        let r = run_quotient("Z + Z/6", "4").unwrap();
        assert!(r.text.contains("Z/2 + Z/4"), "{}", r.text);
    }
}
