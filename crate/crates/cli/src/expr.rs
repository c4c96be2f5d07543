//! A small prefix expression language over the library operations.
//!
//! Every operation has a fixed arity, so `star_additive bracket x0 x1` and
//! `star_additive (bracket x0 x1)` parse the same way. Atoms are X letters
//! (`x0`, `x1`, `xg2`), Y words (`y(2,0)y(1,1)`) and rationals (`3`, `-1/2`).

use std::fmt;

use dshuffle::ihara::{char_f0, char_g0, d_psi, ihara_bracket, s_psi, s_psi_y, theta_checked};
use dshuffle::series::{
    aut, cbh_star, dmr0_membership, exp_star, log_star, s_action_y, star_inverse, star_multiplicative_series,
    star_product, theta_group, tilde_dmr0_factor, TruncSeries, YTruncSeries,
};
use dshuffle::solver::stab_defect;
use dshuffle::poly::RenderMonomial;
use dshuffle::word::parse_xletter;
use dshuffle::xalg::{delta_shuffle, is_lie_element};
use dshuffle::yalg::{
    corr, embed_y, harmonic_coproduct, p_tilde, p_twist, pi_y, q_twist, sec, star_additive,
};
use dshuffle::{AlgebraError, GroupSpec, Rational, XPoly, XTensor2, YPoly, YTensor2, YWord};

#[derive(Clone, Debug)]
pub enum Value {
    Scalar(Rational),
    X(XPoly),
    Y(YPoly),
    XT(XTensor2),
    YT(YTensor2),
    Series(TruncSeries),
    YSeries(YTruncSeries),
    Bool(bool),
    /// A structured result already rendered to JSON.
    Report(serde_json::Value),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::X(_) => "X polynomial",
            Value::Y(_) => "Y polynomial",
            Value::XT(_) => "X tensor",
            Value::YT(_) => "Y tensor",
            Value::Series(_) => "X series",
            Value::YSeries(_) => "Y series",
            Value::Bool(_) => "boolean",
            Value::Report(_) => "report",
        }
    }

    pub fn to_text(&self, g: &GroupSpec) -> String {
        match self {
            Value::Scalar(c) => c.to_string(),
            Value::X(p) => p.to_text(g),
            Value::Y(p) => p.to_text(g),
            Value::XT(p) => p.to_text(g),
            Value::YT(p) => p.to_text(g),
            Value::Series(s) => s.poly().to_text(g),
            Value::YSeries(s) => s.poly().to_text(g),
            Value::Bool(b) => b.to_string(),
            Value::Report(v) => serde_json::to_string_pretty(v).expect("serializable"),
        }
    }

    pub fn to_json(&self, g: &GroupSpec) -> serde_json::Value {
        match self {
            Value::Scalar(c) => serde_json::Value::String(c.to_string()),
            Value::X(p) => p.to_json(g),
            Value::Y(p) => p.to_json(g),
            Value::XT(p) => p.to_json(g),
            Value::YT(p) => p.to_json(g),
            Value::Series(s) => s.to_json(g),
            Value::YSeries(s) => s.to_json(g),
            Value::Bool(b) => serde_json::Value::Bool(*b),
            Value::Report(v) => v.clone(),
        }
    }

    /// (monomial, coefficient) rows, or `None` for non-linear values.
    pub fn rows(&self, g: &GroupSpec) -> Option<Vec<(String, String)>> {
        fn rows_of<M: RenderMonomial>(p: &dshuffle::Poly<M>, g: &GroupSpec) -> Vec<(String, String)> {
            p.sorted_terms().into_iter().map(|(m, c)| (m.render(g), c.to_string())).collect()
        }
        Some(match self {
            Value::X(p) => rows_of(p, g),
            Value::Y(p) => rows_of(p, g),
            Value::XT(p) => rows_of(p, g),
            Value::YT(p) => rows_of(p, g),
            Value::Series(s) => rows_of(s.poly(), g),
            Value::YSeries(s) => rows_of(s.poly(), g),
            _ => return None,
        })
    }
}

#[derive(Debug)]
pub enum EvalError {
    Parse(String),
    Algebra(AlgebraError),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Parse(m) => write!(f, "parse error: {m}"),
            EvalError::Algebra(e) => write!(f, "{e}"),
        }
    }
}

impl From<AlgebraError> for EvalError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Parse(m) => EvalError::Parse(m),
            e => EvalError::Algebra(e),
        }
    }
}

type EResult<T> = std::result::Result<T, EvalError>;

fn perr<T>(msg: impl Into<String>) -> EResult<T> {
    Err(EvalError::Parse(msg.into()))
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Open,
    Close,
    Atom(String),
}

fn tokenize(s: &str) -> EResult<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '(' {
            out.push(Token::Open);
            i += 1;
        } else if c == ')' {
            out.push(Token::Close);
            i += 1;
        } else if c == 'y' && chars.get(i + 1) == Some(&'(') {
            // a run of y(n,g) letters forms one word
            let start = i;
            while chars.get(i) == Some(&'y') && chars.get(i + 1) == Some(&'(') {
                match chars[i..].iter().position(|&c| c == ')') {
                    Some(p) => i += p + 1,
                    None => return perr(format!("unclosed Y letter at {start}")),
                }
            }
            out.push(Token::Atom(chars[start..i].iter().collect()));
        } else {
            let start = i;
            while i < chars.len() && !chars[i].is_whitespace() && chars[i] != '(' && chars[i] != ')' {
                i += 1;
            }
            out.push(Token::Atom(chars[start..i].iter().collect()));
        }
    }
    Ok(out)
}

/// Operation names with their arities.
pub const OPS: &[(&str, usize, &str)] = &[
    ("add", 2, "a + b"),
    ("sub", 2, "a - b"),
    ("neg", 1, "-a"),
    ("mul", 2, "concatenation product, or scaling by a scalar"),
    ("pow", 2, "a^k for an integer k"),
    ("bracket", 2, "commutator ab - ba"),
    ("ihara", 2, "Ihara bracket <a, b>"),
    ("d", 2, "d_a(b)"),
    ("s", 2, "s_a(b)"),
    ("s_y", 2, "s^Y_a(u)"),
    ("theta", 1, "theta(a) for a Lie element a"),
    ("f0", 2, "f0_n(a): coefficient of x0^(n-1) x1"),
    ("g0", 2, "g0_n(a)"),
    ("is_lie", 1, "Friedrichs' criterion"),
    ("delta", 1, "shuffle coproduct"),
    ("pi_y", 1, "projection to Q<Y>"),
    ("corr", 1, "regularization corrector"),
    ("q", 1, "q twist on Q<Y>"),
    ("p", 1, "p twist on Q<Y>"),
    ("embed", 1, "y(n,g) -> x0^(n-1) x_g"),
    ("ptilde", 1, "p~ on Q<X>"),
    ("sec", 1, "section of piY landing in Ker d0"),
    ("star_additive", 1, "psi* = q(piY(psi)) + corr(psi)"),
    ("delta_star", 1, "harmonic coproduct"),
    ("stab_defect", 2, "coderivation defect of s^Y_theta(psi) on Y words of degree m"),
    ("exp", 1, "concatenation exponential (truncated)"),
    ("log", 1, "concatenation logarithm (truncated)"),
    ("exp_star", 1, "star exponential (truncated)"),
    ("log_star", 1, "star logarithm (truncated)"),
    ("star", 2, "G * H = G aut_G(H)"),
    ("star_inverse", 1, "inverse for the star product"),
    ("aut", 2, "aut_G(f)"),
    ("cbh", 2, "log*(exp*(a) * exp*(b))"),
    ("theta_group", 1, "Theta(G) for group-like G"),
    ("s_y_group", 2, "S^Y_G(K)"),
    ("star_mult", 1, "G_star, the multiplicative Y image"),
    ("dmr0_member", 1, "DMR0 membership report"),
    ("tilde_factor", 1, "G = e^(b x1) g e^(a x0) factorization report"),
];

#[derive(Debug)]
enum Node {
    Atom(String),
    Apply(String, Vec<Node>),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn arity(name: &str) -> Option<usize> {
        OPS.iter().find(|(n, _, _)| *n == name).map(|&(_, a, _)| a)
    }

    fn expr(&mut self) -> EResult<Node> {
        match self.toks.get(self.pos).cloned() {
            None => perr("unexpected end of expression"),
            Some(Token::Close) => perr("unexpected ')'"),
            Some(Token::Open) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.toks.get(self.pos) != Some(&Token::Close) {
                    return perr("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(Token::Atom(a)) => {
                self.pos += 1;
                match Self::arity(&a) {
                    Some(k) => {
                        let args = (0..k).map(|_| self.expr()).collect::<EResult<Vec<_>>>()?;
                        Ok(Node::Apply(a, args))
                    }
                    None => Ok(Node::Atom(a)),
                }
            }
        }
    }
}

pub struct Evaluator<'a> {
    pub g: &'a GroupSpec,
    pub trunc: usize,
}

impl<'a> Evaluator<'a> {
    pub fn eval_str(&self, src: &str) -> EResult<Value> {
        let toks = tokenize(src)?;
        let mut p = Parser { toks, pos: 0 };
        let node = p.expr()?;
        if p.pos != p.toks.len() {
            return perr(format!("trailing input after position {}", p.pos));
        }
        self.eval(&node)
    }

    fn atom(&self, a: &str) -> EResult<Value> {
        if a.starts_with("y(") {
            return Ok(Value::Y(YPoly::word(YWord::parse(a, self.g)?)));
        }
        if a.starts_with('x') {
            let c = parse_xletter(a, self.g)?;
            return Ok(Value::X(XPoly::letter(c)));
        }
        if a == "true" || a == "false" {
            return Ok(Value::Bool(a == "true"));
        }
        match a.parse::<Rational>() {
            Ok(c) => Ok(Value::Scalar(c)),
            Err(_) => perr(format!("unknown operation or literal {a:?}")),
        }
    }

    fn eval(&self, n: &Node) -> EResult<Value> {
        match n {
            Node::Atom(a) => self.atom(a),
            Node::Apply(op, args) => {
                let vals = args.iter().map(|a| self.eval(a)).collect::<EResult<Vec<_>>>()?;
                self.apply(op, vals)
            }
        }
    }

    fn x(&self, v: &Value, op: &str) -> EResult<XPoly> {
        match v {
            Value::X(p) => Ok(p.clone()),
            Value::Scalar(c) => Ok(XPoly::constant(c.clone())),
            Value::Series(s) => Ok(s.poly().clone()),
            other => perr(format!("{op} expects an X polynomial, got a {}", other.kind())),
        }
    }

    fn y(&self, v: &Value, op: &str) -> EResult<YPoly> {
        match v {
            Value::Y(p) => Ok(p.clone()),
            Value::Scalar(c) => Ok(YPoly::constant(c.clone())),
            Value::YSeries(s) => Ok(s.poly().clone()),
            other => perr(format!("{op} expects a Y polynomial, got a {}", other.kind())),
        }
    }

    fn series(&self, v: &Value, op: &str) -> EResult<TruncSeries> {
        match v {
            Value::Series(s) => Ok(s.clone()),
            _ => Ok(TruncSeries::new(self.x(v, op)?, self.trunc)?),
        }
    }

    fn int(&self, v: &Value, op: &str) -> EResult<usize> {
        match v {
            Value::Scalar(c) if c.is_integer() && !c.is_negative() => c
                .numer()
                .to_string()
                .parse()
                .map_err(|_| EvalError::Parse(format!("{op}: integer {c} too large"))),
            other => perr(format!("{op} expects a non-negative integer, got {}", other.to_text(self.g))),
        }
    }

    fn linear(&self, a: Value, b: Value, op: &str, sign: i64) -> EResult<Value> {
        let s = Rational::from_int(sign);
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x + &(&s * &y)),
            (Value::Y(p), q) | (q, Value::Y(p)) if sign == 1 => Value::Y(&p + &self.y(&q, op)?),
            (Value::Y(p), q) => Value::Y(&p - &self.y(&q, op)?),
            (q, Value::Y(p)) => Value::Y(&self.y(&q, op)? - &p),
            (Value::XT(p), Value::XT(q)) => Value::XT(&p + &q.scale(&s)),
            (Value::YT(p), Value::YT(q)) => Value::YT(&p + &q.scale(&s)),
            (Value::Series(p), q) => Value::Series(p.add(&self.series(&q, op)?.scale(&s))?),
            (q, Value::Series(p)) => Value::Series(self.series(&q, op)?.add(&p.scale(&s))?),
            (p, q) => Value::X(&self.x(&p, op)? + &self.x(&q, op)?.scale(&s)),
        })
    }

    fn apply(&self, op: &str, v: Vec<Value>) -> EResult<Value> {
        let g = self.g;
        let d = self.trunc;
        Ok(match op {
            "add" => {
                let mut v = v.into_iter();
                self.linear(v.next().unwrap(), v.next().unwrap(), op, 1)?
            }
            "sub" => {
                let mut v = v.into_iter();
                self.linear(v.next().unwrap(), v.next().unwrap(), op, -1)?
            }
            "neg" => self.linear(Value::Scalar(Rational::zero()), v[0].clone(), op, -1)?,
            "mul" => match (&v[0], &v[1]) {
                (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(a * b),
                (Value::Scalar(c), Value::Y(p)) | (Value::Y(p), Value::Scalar(c)) => Value::Y(p.scale(c)),
                (Value::Y(a), Value::Y(b)) => Value::Y(a * b),
                (Value::Scalar(c), Value::Series(s)) | (Value::Series(s), Value::Scalar(c)) => Value::Series(s.scale(c)),
                (Value::Series(_), _) | (_, Value::Series(_)) => {
                    Value::Series(self.series(&v[0], op)?.mul(&self.series(&v[1], op)?)?)
                }
                (a, b) => Value::X(&self.x(a, op)? * &self.x(b, op)?),
            },
            "pow" => {
                let k = self.int(&v[1], op)? as u32;
                match &v[0] {
                    Value::Y(p) => Value::Y(p.pow_trunc(k, usize::MAX)),
                    Value::Series(s) => Value::Series(TruncSeries::new(s.poly().pow_trunc(k, d), d)?),
                    a => Value::X(self.x(a, op)?.pow_trunc(k, usize::MAX)),
                }
            }
            "bracket" => match (&v[0], &v[1]) {
                (Value::Y(a), b) | (b, Value::Y(a)) => {
                    let b = self.y(b, op)?;
                    if matches!(v[0], Value::Y(_)) {
                        Value::Y(a.commutator(&b))
                    } else {
                        Value::Y(b.commutator(a))
                    }
                }
                (a, b) => Value::X(self.x(a, op)?.commutator(&self.x(b, op)?)),
            },
            "ihara" => Value::X(ihara_bracket(g, &self.x(&v[0], op)?, &self.x(&v[1], op)?)?),
            "d" => Value::X(d_psi(g, &self.x(&v[0], op)?, &self.x(&v[1], op)?)),
            "s" => Value::X(s_psi(g, &self.x(&v[0], op)?, &self.x(&v[1], op)?)),
            "s_y" => Value::Y(s_psi_y(g, &self.x(&v[0], op)?, &self.y(&v[1], op)?)?),
            "theta" => Value::X(theta_checked(&self.x(&v[0], op)?)?),
            "f0" => Value::Scalar(char_f0(self.int(&v[0], op)?, &self.x(&v[1], op)?)),
            "g0" => Value::Scalar(char_g0(self.int(&v[0], op)?, &self.x(&v[1], op)?)),
            "is_lie" => Value::Bool(is_lie_element(&self.x(&v[0], op)?)?),
            "delta" => Value::XT(delta_shuffle(&self.x(&v[0], op)?)),
            "pi_y" => Value::Y(pi_y(&self.x(&v[0], op)?)),
            "corr" => Value::Y(corr(&self.x(&v[0], op)?)),
            "q" => Value::Y(q_twist(g, &self.y(&v[0], op)?)),
            "p" => Value::Y(p_twist(g, &self.y(&v[0], op)?)),
            "embed" => Value::X(embed_y(&self.y(&v[0], op)?)),
            "ptilde" => Value::X(p_tilde(g, &self.x(&v[0], op)?)),
            "sec" => Value::X(sec(&self.y(&v[0], op)?)),
            "star_additive" => Value::Y(star_additive(g, &self.x(&v[0], op)?)),
            "delta_star" => Value::YT(harmonic_coproduct(g, &self.y(&v[0], op)?)),
            "stab_defect" => {
                let m = self.int(&v[1], op)?;
                let def = stab_defect(g, &self.x(&v[0], op)?, m)?;
                let mut map = serde_json::Map::new();
                for (w, t) in def.sources.iter().zip(&def.values) {
                    map.insert(w.render(g), t.to_json(g));
                }
                Value::Report(serde_json::Value::Object(map))
            }
            "exp" => Value::Series(self.series(&v[0], op)?.exp()?),
            "log" => Value::Series(self.series(&v[0], op)?.log()?),
            "exp_star" => Value::Series(exp_star(g, &self.series(&v[0], op)?)?),
            "log_star" => Value::Series(log_star(g, &self.series(&v[0], op)?)?),
            "star" => Value::Series(star_product(g, &self.series(&v[0], op)?, &self.series(&v[1], op)?)?),
            "star_inverse" => Value::Series(star_inverse(g, &self.series(&v[0], op)?)?),
            "aut" => Value::Series(aut(g, &self.series(&v[0], op)?, &self.series(&v[1], op)?)?),
            "cbh" => Value::Series(cbh_star(g, &self.series(&v[0], op)?, &self.series(&v[1], op)?)?),
            "theta_group" => Value::Series(theta_group(&self.series(&v[0], op)?)?),
            "s_y_group" => {
                let k = YTruncSeries::new(self.y(&v[1], op)?, d)?;
                Value::YSeries(s_action_y(g, &self.series(&v[0], op)?, &k)?)
            }
            "star_mult" => Value::YSeries(star_multiplicative_series(g, &self.series(&v[0], op)?)?),
            "dmr0_member" => {
                let rep = dmr0_membership(g, &self.series(&v[0], op)?);
                Value::Report(serde_json::json!({ "member": rep.passed(), "failures": rep.failures }))
            }
            "tilde_factor" => {
                let f = tilde_dmr0_factor(g, &self.series(&v[0], op)?)?;
                Value::Report(serde_json::json!({
                    "beta": f.beta.to_string(),
                    "alpha": f.alpha.to_string(),
                    "core": f.core.to_json(g),
                    "member": f.is_member(),
                    "failures": f.core_membership.failures,
                }))
            }
            _ => return perr(format!("unknown operation {op:?}")),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(src: &str, gamma: &str) -> EResult<String> {
        let g: GroupSpec = gamma.parse().unwrap();
        let v = Evaluator { g: &g, trunc: 4 }.eval_str(src)?;
        Ok(v.to_text(&g))
    }

    #[test]
    fn y_runs_are_single_tokens() {
        let t = tokenize("add y(1,0)y(2,1) (neg x1)").unwrap();
        assert_eq!(t[1], Token::Atom("y(1,0)y(2,1)".into()));
        assert_eq!(t[2], Token::Open);
        assert!(tokenize("y(1,0").is_err());
    }

    #[test]
    fn parentheses_are_optional_grouping() {
        assert_eq!(run("star_additive bracket x0 x1", "cyclic:1").unwrap(), "y(2,0): 1, y(1,0)y(1,0): -1/2");
        assert_eq!(
            run("star_additive (bracket x0 x1)", "cyclic:1").unwrap(),
            run("(star_additive ((bracket x0 (x1))))", "cyclic:1").unwrap()
        );
    }

    #[test]
    fn scalars_coerce() {
        assert_eq!(run("add 1 x0", "cyclic:1").unwrap(), "1: 1, x0: 1");
        assert_eq!(run("mul -1/2 x1", "cyclic:1").unwrap(), "x1: -1/2");
        assert_eq!(run("add 1/3 2/3", "cyclic:1").unwrap(), "1");
        assert_eq!(run("sub y(1,1) y(1,1)", "cyclic:2").unwrap(), "0");
    }

    #[test]
    fn errors_are_classified() {
        assert!(matches!(run("theta", "cyclic:1"), Err(EvalError::Parse(_))));
        assert!(matches!(run("x0 x1", "cyclic:1"), Err(EvalError::Parse(_))));
        assert!(matches!(run("frobnicate x0", "cyclic:1"), Err(EvalError::Parse(_))));
        assert!(matches!(run("xg1", "cyclic:1"), Err(EvalError::Algebra(AlgebraError::GroupMismatch(_)))));
        assert!(matches!(run("theta mul x0 x1", "cyclic:1"), Err(EvalError::Algebra(AlgebraError::NotLie))));
        assert!(matches!(run("delta_star x0", "cyclic:1"), Err(EvalError::Parse(_))));
    }

    #[test]
    fn every_listed_op_is_dispatched() {
        let g = GroupSpec::trivial();
        let ev = Evaluator { g: &g, trunc: 3 };
        for (name, arity, _) in OPS {
            // bad argument types are fine; only "unknown operation" would mean a missing arm
            let args = vec![Value::Scalar(Rational::one()); *arity];
            if let Err(EvalError::Parse(m)) = ev.apply(name, args) {
                assert!(!m.contains("unknown operation"), "{name}: {m}");
            }
        }
    }
}
