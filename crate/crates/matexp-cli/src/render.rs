//! Closed-form renderings of a symbolic exponential, one additive group per
//! eigenvalue, tagged with e^{lambda t} and t-powers.
//!
//! Numbers are printed with Rust's shortest round-trip formatting, so the
//! plain text re-evaluates to exactly the matrices the engine holds. Groups
//! are ordered by descending real part, then descending imaginary part.

use matexp::{Complex64, ComplexSquareMatrix, SymbolicExponential};

#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormRendering {
    pub plain_text: String,
    pub latex: String,
}

struct Group {
    lambda: Complex64,
    powers: Vec<(usize, ComplexSquareMatrix)>,
}

pub fn render_closed_form(s: &SymbolicExponential, realform: bool) -> ClosedFormRendering {
    let mut groups: Vec<Group> = Vec::new();
    for term in s.terms() {
        match groups.last_mut() {
            Some(g) if g.lambda == term.lambda => g.powers.push((term.power, term.matrix.clone())),
            _ => groups.push(Group {
                lambda: term.lambda,
                powers: vec![(term.power, term.matrix.clone())],
            }),
        }
    }
    groups.sort_by(|a, b| {
        b.lambda.re.total_cmp(&a.lambda.re).then(b.lambda.im.total_cmp(&a.lambda.im))
    });

    let mut plain = String::from("exp(t*A) =\n");
    let mut latex = String::from("e^{t A} =\n");

    let mut skip: Vec<bool> = vec![false; groups.len()];
    for gi in 0..groups.len() {
        if skip[gi] {
            continue;
        }
        let lambda = groups[gi].lambda;
        if realform && lambda.im != 0.0 {
            // pair with the exact conjugate group and fold into
            // e^{at} (cos(bt) P + sin(bt) Q) with P = 2 Re(M), Q = -2 Im(M)
            if let Some(pj) = groups
                .iter()
                .position(|g| g.lambda == lambda.conj() && g.lambda.im != lambda.im)
            {
                skip[pj] = true;
                let (a, b) = (lambda.re, lambda.im.abs());
                // use the group with positive imaginary part as representative
                let rep = if lambda.im > 0.0 { &groups[gi] } else { &groups[pj] };
                for (power, matrix) in &rep.powers {
                    let p = matrix.scale(Complex64::new(2.0, 0.0));
                    let q = matrix.scale(Complex64::new(0.0, -2.0));
                    for (trig, m) in [("cos", &p), ("sin", &q)] {
                        plain.push_str(&format!(
                            "  + {}exp(({})*t) * {trig}(({})*t) *\n",
                            power_prefix(*power),
                            fmt_f(a),
                            fmt_f(b)
                        ));
                        push_plain_matrix_real(&mut plain, m);
                        latex.push_str(&format!(
                            "  + {}e^{{({}) t}} \\{trig}(({}) t) {}\n",
                            power_prefix_latex(*power),
                            fmt_f(a),
                            fmt_f(b),
                            latex_matrix_real(m)
                        ));
                    }
                }
                continue;
            }
        }
        for (power, matrix) in &groups[gi].powers {
            plain.push_str(&format!(
                "  + {}exp(({})*t) *\n",
                power_prefix(*power),
                fmt_c(lambda)
            ));
            push_plain_matrix(&mut plain, matrix);
            latex.push_str(&format!(
                "  + {}e^{{({}) t}} {}\n",
                power_prefix_latex(*power),
                fmt_c_latex(lambda),
                latex_matrix(matrix)
            ));
        }
    }

    ClosedFormRendering { plain_text: plain, latex }
}

fn power_prefix(power: usize) -> String {
    match power {
        0 => String::new(),
        1 => "t * ".into(),
        p => format!("t^{p} * "),
    }
}

fn power_prefix_latex(power: usize) -> String {
    match power {
        0 => String::new(),
        1 => "t\\, ".into(),
        p => format!("t^{{{p}}}\\, "),
    }
}

fn fmt_f(x: f64) -> String {
    format!("{x}")
}

fn fmt_c(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

fn fmt_c_latex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}\\,i", z.re, z.im)
    }
}

fn push_plain_matrix(out: &mut String, m: &ComplexSquareMatrix) {
    let n = m.order();
    for i in 0..n {
        out.push_str("      [");
        for j in 0..n {
            out.push(' ');
            out.push_str(&fmt_c(m.get(i, j)));
        }
        out.push_str(" ]\n");
    }
}

fn push_plain_matrix_real(out: &mut String, m: &ComplexSquareMatrix) {
    let n = m.order();
    for i in 0..n {
        out.push_str("      [");
        for j in 0..n {
            out.push(' ');
            out.push_str(&fmt_f(m.get(i, j).re));
        }
        out.push_str(" ]\n");
    }
}

fn latex_matrix(m: &ComplexSquareMatrix) -> String {
    let n = m.order();
    let rows: Vec<String> = (0..n)
        .map(|i| (0..n).map(|j| fmt_c_latex(m.get(i, j))).collect::<Vec<_>>().join(" & "))
        .collect();
    format!("\\begin{{pmatrix}} {} \\end{{pmatrix}}", rows.join(" \\\\ "))
}

fn latex_matrix_real(m: &ComplexSquareMatrix) -> String {
    let n = m.order();
    let rows: Vec<String> = (0..n)
        .map(|i| (0..n).map(|j| fmt_f(m.get(i, j).re)).collect::<Vec<_>>().join(" & "))
        .collect();
    format!("\\begin{{pmatrix}} {} \\end{{pmatrix}}", rows.join(" \\\\ "))
}
