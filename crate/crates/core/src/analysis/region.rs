//! Exact feasibility regions of linear inequality systems in `(alpha, beta)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};
use crate::oracles::format_sig;

pub type Q = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Lt,
    Le,
    Gt,
    Ge,
}

impl Cmp {
    pub fn is_strict(self) -> bool {
        matches!(self, Cmp::Lt | Cmp::Gt)
    }

    fn symbol(self) -> &'static str {
        match self {
            Cmp::Lt => "<",
            Cmp::Le => "<=",
            Cmp::Gt => ">",
            Cmp::Ge => ">=",
        }
    }
}

impl FromStr for Cmp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "<" | "lt" => Ok(Cmp::Lt),
            "<=" | "≤" | "le" => Ok(Cmp::Le),
            ">" | "gt" => Ok(Cmp::Gt),
            ">=" | "≥" | "ge" => Ok(Cmp::Ge),
            other => Err(Error::Parse(format!("unknown comparison '{other}'"))),
        }
    }
}

/// `a * alpha + b * beta cmp c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub a: Q,
    pub b: Q,
    pub cmp: Cmp,
    pub c: Q,
}

impl Inequality {
    pub fn new(a: Q, b: Q, cmp: Cmp, c: Q) -> Self {
        Self { a, b, cmp, c }
    }

    fn lhs(&self, x: &Q, y: &Q) -> Q {
        &self.a * x + &self.b * y
    }

    /// Holds as written, strictness included.
    pub fn holds(&self, x: &Q, y: &Q) -> bool {
        let v = self.lhs(x, y);
        match self.cmp {
            Cmp::Lt => v < self.c,
            Cmp::Le => v <= self.c,
            Cmp::Gt => v > self.c,
            Cmp::Ge => v >= self.c,
        }
    }

    /// Holds with strict comparisons relaxed to their closures.
    pub fn holds_closed(&self, x: &Q, y: &Q) -> bool {
        let v = self.lhs(x, y);
        match self.cmp {
            Cmp::Lt | Cmp::Le => v <= self.c,
            Cmp::Gt | Cmp::Ge => v >= self.c,
        }
    }

    fn is_constant(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.a, self.b, self.cmp.symbol(), self.c)
    }
}

impl FromStr for Inequality {
    type Err = Error;

    /// Parses `"a b cmp c"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let [a, b, cmp, c] = parts.as_slice() else {
            return Err(Error::Parse(format!("expected 'a b cmp c', got '{s}'")));
        };
        Ok(Self::new(parse_rational(a)?, parse_rational(b)?, cmp.parse()?, parse_rational(c)?))
    }
}

/// Parses `"3"`, `"-1/14"` or `"0.875"` exactly.
pub fn parse_rational(s: &str) -> Result<Q> {
    let bad = || Error::Parse(format!("invalid rational '{s}'"));
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Q::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int: BigInt = match int {
            "" | "-" | "+" => BigInt::zero(),
            _ => int.parse().map_err(|_| bad())?,
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let magnitude = int.abs() * &scale + frac;
        let num = if negative { -magnitude } else { magnitude };
        return Ok(Q::new(num, scale));
    }
    let v: BigInt = s.trim().parse().map_err(|_| bad())?;
    Ok(Q::from_integer(v))
}

fn q(num: i64, den: i64) -> Q {
    Q::new(num.into(), den.into())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionSystem {
    pub label: String,
    pub inequalities: Vec<Inequality>,
}

impl RegionSystem {
    pub fn new(label: impl Into<String>, inequalities: Vec<Inequality>) -> Result<Self> {
        if inequalities.is_empty() {
            return Err(domain("a region system needs at least one inequality"));
        }
        Ok(Self {
            label: label.into(),
            inequalities,
        })
    }

    /// One inequality per line; blank lines and `#` comments are skipped.
    pub fn parse(label: impl Into<String>, text: &str) -> Result<Self> {
        let inequalities = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>>>()?;
        Self::new(label, inequalities)
    }

    pub fn holds(&self, x: &Q, y: &Q) -> bool {
        self.inequalities.iter().all(|i| i.holds(x, y))
    }

    fn holds_closed(&self, x: &Q, y: &Q) -> bool {
        self.inequalities.iter().all(|i| i.holds_closed(x, y))
    }
}

fn ineq(a: Q, b: Q, cmp: Cmp, c: Q) -> Inequality {
    Inequality::new(a, b, cmp, c)
}

// 2β − α > 3/2 and β − α > 1/2.
fn shared_rows() -> Vec<Inequality> {
    vec![
        ineq(q(-1, 1), q(2, 1), Cmp::Gt, q(3, 2)),
        ineq(q(-1, 1), q(1, 1), Cmp::Gt, q(1, 2)),
    ]
}

// 1 − 3α > 1/2, written 3α < 1/2.
fn azuma_row() -> Inequality {
    ineq(q(3, 1), q(0, 1), Cmp::Lt, q(1, 2))
}

// α ∈ [0, 1/3], β ∈ (0, 1).
fn open_box_rows() -> Vec<Inequality> {
    vec![
        ineq(q(1, 1), q(0, 1), Cmp::Ge, q(0, 1)),
        ineq(q(1, 1), q(0, 1), Cmp::Le, q(1, 3)),
        ineq(q(0, 1), q(1, 1), Cmp::Gt, q(0, 1)),
        ineq(q(0, 1), q(1, 1), Cmp::Lt, q(1, 1)),
    ]
}

pub const NAMED_SYSTEMS: [&str; 5] = [
    "theorem1",
    "theorem2-case1",
    "theorem2-case2",
    "theorem2-case3",
    "combined",
];

/// The built-in systems. `combined` expands to the three second-theorem
/// cases, whose union it denotes.
pub fn named_systems(name: &str) -> Result<Vec<RegionSystem>> {
    let system = |label: &str, rows: Vec<Inequality>| RegionSystem::new(label, rows);
    match name {
        "theorem1" => {
            let mut rows = shared_rows();
            rows.extend([
                // 1 − 3α ≥ β
                ineq(q(3, 1), q(1, 1), Cmp::Le, q(1, 1)),
                ineq(q(0, 1), q(1, 1), Cmp::Ge, q(0, 1)),
                ineq(q(0, 1), q(1, 1), Cmp::Le, q(1, 1)),
                ineq(q(1, 1), q(0, 1), Cmp::Ge, q(0, 1)),
                ineq(q(1, 1), q(0, 1), Cmp::Le, q(1, 3)),
                azuma_row(),
            ]);
            Ok(vec![system("theorem1", rows)?])
        }
        "theorem2-case1" | "theorem2-case2" | "theorem2-case3" => {
            let mut rows = shared_rows();
            match name {
                "theorem2-case1" => rows.extend([
                    // β ≤ 1 − 2α and 3β/2 − 1/2 ≤ 1 − 3α
                    ineq(q(2, 1), q(1, 1), Cmp::Le, q(1, 1)),
                    ineq(q(3, 1), q(3, 2), Cmp::Le, q(3, 2)),
                ]),
                "theorem2-case2" => rows.extend([
                    ineq(q(2, 1), q(1, 1), Cmp::Gt, q(1, 1)),
                    ineq(q(3, 1), q(3, 2), Cmp::Le, q(3, 2)),
                ]),
                _ => rows.push(ineq(q(2, 1), q(1, 1), Cmp::Gt, q(1, 1))),
            }
            rows.extend(open_box_rows());
            rows.push(azuma_row());
            Ok(vec![system(name, rows)?])
        }
        "combined" => ["theorem2-case1", "theorem2-case2", "theorem2-case3"]
            .iter()
            .map(|n| named_systems(n).map(|mut v| v.remove(0)))
            .collect(),
        other => Err(Error::Parse(format!(
            "unknown region system '{other}', expected one of {}",
            NAMED_SYSTEMS.join(", ")
        ))),
    }
}

/// Half-width of the artificial box that certifies boundedness.
const BOX: i64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionSolution {
    pub label: String,
    pub sup_alpha: Q,
    /// Whether some feasible point has `alpha = sup_alpha`.
    pub attained: bool,
    /// The closed region's face at `alpha = sup_alpha` spans these betas.
    pub face_beta: (Q, Q),
    /// Midpoint of that face.
    pub witness_beta: Q,
    /// Corners of the closed region, counter-clockwise.
    pub vertices: Vec<(Q, Q)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegionOutcome {
    Feasible(Box<RegionSolution>),
    Infeasible { label: String, reason: String },
    Unbounded { label: String },
}

impl RegionOutcome {
    pub fn label(&self) -> &str {
        match self {
            RegionOutcome::Feasible(s) => &s.label,
            RegionOutcome::Infeasible { label, .. } | RegionOutcome::Unbounded { label } => label,
        }
    }

    pub fn solution(&self) -> Option<&RegionSolution> {
        match self {
            RegionOutcome::Feasible(s) => Some(s),
            _ => None,
        }
    }
}

impl fmt::Display for RegionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionOutcome::Feasible(s) => {
                write!(
                    f,
                    "{}: sup alpha = {} ({}), beta in [{}, {}] at the supremum",
                    s.label,
                    s.sup_alpha,
                    if s.attained { "attained" } else { "not attained" },
                    s.face_beta.0,
                    s.face_beta.1
                )
            }
            RegionOutcome::Infeasible { label, reason } => write!(f, "{label}: infeasible ({reason})"),
            RegionOutcome::Unbounded { label } => write!(f, "{label}: alpha unbounded above"),
        }
    }
}

fn line_intersection(p: &Inequality, r: &Inequality) -> Option<(Q, Q)> {
    let det = &p.a * &r.b - &r.a * &p.b;
    if det.is_zero() {
        return None;
    }
    let x = (&p.c * &r.b - &r.c * &p.b) / &det;
    let y = (&p.a * &r.c - &r.a * &p.c) / &det;
    Some((x, y))
}

/// Supremum of `alpha` over the region, found by enumerating the corners of
/// its closure.
pub fn region_max_alpha(sys: &RegionSystem) -> RegionOutcome {
    let label = sys.label.clone();
    for i in sys.inequalities.iter().filter(|i| i.is_constant()) {
        if !i.holds(&Q::zero(), &Q::zero()) {
            return RegionOutcome::Infeasible {
                label,
                reason: format!("constant inequality '{i}' is false"),
            };
        }
    }
    let big = Q::from_integer(BOX.into());
    let one = Q::from_integer(1.into());
    let zero = Q::zero();
    let mut closed: Vec<Inequality> = sys
        .inequalities
        .iter()
        .filter(|i| !i.is_constant())
        .cloned()
        .collect();
    closed.extend([
        ineq(one.clone(), zero.clone(), Cmp::Le, big.clone()),
        ineq(one.clone(), zero.clone(), Cmp::Ge, -big.clone()),
        ineq(zero.clone(), one.clone(), Cmp::Le, big.clone()),
        ineq(zero.clone(), one.clone(), Cmp::Ge, -big.clone()),
    ]);
    let mut corners = BTreeSet::new();
    for (i, p) in closed.iter().enumerate() {
        for r in &closed[i + 1..] {
            if let Some((x, y)) = line_intersection(p, r) {
                if closed.iter().all(|c| c.holds_closed(&x, &y)) {
                    corners.insert((x, y));
                }
            }
        }
    }
    if corners.is_empty() {
        return RegionOutcome::Infeasible {
            label,
            reason: "the closed region is empty".into(),
        };
    }
    let vertices: Vec<(Q, Q)> = corners.into_iter().collect();
    let count = Q::from_integer((vertices.len() as i64).into());
    let cx = vertices.iter().map(|v| v.0.clone()).sum::<Q>() / &count;
    let cy = vertices.iter().map(|v| v.1.clone()).sum::<Q>() / &count;
    // The vertex centroid lies in the relative interior of the closure, which
    // meets the strict region whenever the latter is non-empty.
    if !sys.holds(&cx, &cy) {
        return RegionOutcome::Infeasible {
            label,
            reason: "only the closure is non-empty; strict inequalities exclude every point".into(),
        };
    }
    let sup = vertices.iter().map(|v| v.0.clone()).max().expect("non-empty");
    if sup == big {
        return RegionOutcome::Unbounded { label };
    }
    let face: Vec<&Q> = vertices.iter().filter(|v| v.0 == sup).map(|v| &v.1).collect();
    let lo = (*face.iter().min().expect("non-empty")).clone();
    let hi = (*face.iter().max().expect("non-empty")).clone();
    let witness = (&lo + &hi) / Q::from_integer(2.into());
    let attained = sys.holds(&sup, &witness);
    debug_assert!(sys.holds_closed(&sup, &witness));
    let mut vertices = vertices;
    let (fx, fy) = (to_f64(&cx), to_f64(&cy));
    vertices.sort_by(|a, b| {
        let ta = (to_f64(&a.1) - fy).atan2(to_f64(&a.0) - fx);
        let tb = (to_f64(&b.1) - fy).atan2(to_f64(&b.0) - fx);
        ta.total_cmp(&tb)
    });
    RegionOutcome::Feasible(Box::new(RegionSolution {
        label,
        sup_alpha: sup,
        attained,
        face_beta: (lo, hi),
        witness_beta: witness,
        vertices,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionUnion {
    pub outcomes: Vec<RegionOutcome>,
    /// Index into `outcomes` of the first system reaching the largest
    /// supremum, if any system is feasible and bounded.
    pub best: Option<usize>,
    pub unbounded: bool,
}

impl RegionUnion {
    pub fn sup_alpha(&self) -> Option<&Q> {
        self.best
            .and_then(|i| self.outcomes[i].solution())
            .map(|s| &s.sup_alpha)
    }

    pub fn best_solution(&self) -> Option<&RegionSolution> {
        self.best.and_then(|i| self.outcomes[i].solution())
    }

    /// Whether some system with the largest supremum attains it.
    pub fn attained(&self) -> bool {
        let Some(sup) = self.sup_alpha() else {
            return false;
        };
        self.outcomes
            .iter()
            .filter_map(RegionOutcome::solution)
            .any(|s| &s.sup_alpha == sup && s.attained)
    }

    /// Whether `(alpha, beta)` satisfies at least one system.
    pub fn contains(&self, systems: &[RegionSystem], x: &Q, y: &Q) -> bool {
        systems.iter().any(|s| s.holds(x, y))
    }
}

/// Supremum of `alpha` over the union of the systems' regions.
pub fn region_union_max_alpha(systems: &[RegionSystem]) -> RegionUnion {
    let outcomes: Vec<RegionOutcome> = systems.iter().map(region_max_alpha).collect();
    let unbounded = outcomes
        .iter()
        .any(|o| matches!(o, RegionOutcome::Unbounded { .. }));
    let mut best: Option<usize> = None;
    for (i, o) in outcomes.iter().enumerate() {
        if let Some(s) = o.solution() {
            let better = match best.and_then(|b| outcomes[b].solution()) {
                Some(cur) => s.sup_alpha > cur.sup_alpha,
                None => true,
            };
            if better {
                best = Some(i);
            }
        }
    }
    RegionUnion {
        outcomes,
        best: if unbounded { None } else { best },
        unbounded,
    }
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Corners as CSV with `alpha,beta` in decimal and exact columns.
pub fn vertices_csv(outcomes: &[RegionOutcome]) -> String {
    let mut out = String::from("system,alpha,beta,alpha_exact,beta_exact\n");
    for s in outcomes.iter().filter_map(RegionOutcome::solution) {
        for (x, y) in &s.vertices {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                s.label,
                format_sig(to_f64(x), 15),
                format_sig(to_f64(y), 15),
                x,
                y
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(name: &str) -> RegionOutcome {
        region_max_alpha(&named_systems(name).unwrap()[0])
    }

    #[test]
    fn parses_inequalities() {
        let i: Inequality = "-1 2 > 3/2".parse().unwrap();
        assert_eq!(i, ineq(q(-1, 1), q(2, 1), Cmp::Gt, q(3, 2)));
        let i: Inequality = "0.5 -0.25 <= -1.5".parse().unwrap();
        assert_eq!(i, ineq(q(1, 2), q(-1, 4), Cmp::Le, q(-3, 2)));
        assert!("1 2 3".parse::<Inequality>().is_err());
        assert!("1 2 = 3".parse::<Inequality>().is_err());
        assert!("1/0 2 < 3".parse::<Inequality>().is_err());
        assert_eq!(parse_rational("-.5").unwrap(), q(-1, 2));
        assert!(RegionSystem::parse("x", "# nothing\n\n").is_err());
    }

    #[test]
    fn alpha_box_alone() {
        let sys = RegionSystem::parse("box", "1 0 >= 0\n1 0 <= 1/3\n").unwrap();
        // β is free, so only alpha is bounded.
        let out = region_max_alpha(&sys);
        let s = out.solution().unwrap();
        assert_eq!(s.sup_alpha, q(1, 3));
        assert!(s.attained);
    }

    #[test]
    fn first_theorem_system() {
        let out = solve("theorem1");
        let s = out.solution().unwrap();
        assert_eq!(s.sup_alpha, q(1, 14));
        assert!(!s.attained);
        assert_eq!(s.face_beta, (q(11, 14), q(11, 14)));
    }

    #[test]
    fn second_theorem_cases() {
        assert_eq!(solve("theorem2-case1").solution().unwrap().sup_alpha, q(1, 10));
        assert!(matches!(solve("theorem2-case2"), RegionOutcome::Infeasible { .. }));
        let c3 = solve("theorem2-case3");
        let s = c3.solution().unwrap();
        assert_eq!(s.sup_alpha, q(1, 6));
        assert_eq!(s.face_beta, (q(5, 6), q(1, 1)));
        assert!(!s.attained);
    }

    #[test]
    fn combined_union() {
        let systems = named_systems("combined").unwrap();
        let u = region_union_max_alpha(&systems);
        assert_eq!(u.sup_alpha(), Some(&q(1, 6)));
        assert!(!u.attained());
        for eps in [q(1, 100), q(1, 1000)] {
            let x = q(1, 6) - &eps;
            let y = q(7, 8) + &eps * q(2, 1);
            assert!(u.contains(&systems, &x, &y));
        }
    }

    #[test]
    fn unbounded_and_empty() {
        let sys = RegionSystem::parse("open", "1 -1 >= 0").unwrap();
        assert!(matches!(region_max_alpha(&sys), RegionOutcome::Unbounded { .. }));
        let sys = RegionSystem::parse("empty", "1 0 > 1\n1 0 < 0").unwrap();
        assert!(matches!(region_max_alpha(&sys), RegionOutcome::Infeasible { .. }));
        let sys = RegionSystem::parse("const", "0 0 > 1").unwrap();
        assert!(matches!(region_max_alpha(&sys), RegionOutcome::Infeasible { .. }));
    }

    #[test]
    fn vertices_are_feasible_in_closure() {
        let sys = &named_systems("theorem1").unwrap()[0];
        let s = region_max_alpha(sys).solution().unwrap().clone();
        for (x, y) in &s.vertices {
            assert!(sys.holds_closed(x, y));
        }
        let csv = vertices_csv(&[RegionOutcome::Feasible(Box::new(s))]);
        assert!(csv.starts_with("system,alpha,beta,"));
        assert!(csv.contains(",1/14,11/14\n"));
    }

    #[test]
    fn unknown_name() {
        assert!(named_systems("theorem3").is_err());
    }
}
