/// Proper containments `F ⊊ G` between the families of subsets of the
/// positive integers. `d` marks dynamical families, `dc` dynamically
/// central ones, `*` the dual family.
pub const CONTAINMENTS: [(&str, &str); 19] = [
    ("PS* = dPS*", "T"),
    ("PS* = dPS*", "dcPS*"),
    ("T", "dT"),
    ("dT", "dcT"),
    ("IP*", "C*"),
    ("dcPS*", "C*"),
    ("dcPS*", "dcS"),
    ("C*", "dcT"),
    ("T", "C"),
    ("C*", "C"),
    ("dcS", "C"),
    ("dcS", "dS"),
    ("dcT", "dcPS"),
    ("C", "dcPS"),
    ("C", "IP"),
    ("C*", "S"),
    ("dS", "S"),
    ("S", "PS = dPS"),
    ("dcPS", "PS = dPS"),
];

pub const LEGEND: [(&str, &str); 8] = [
    ("S", "syndetic"),
    ("T", "thick"),
    ("PS", "piecewise syndetic"),
    ("IP", "contains all finite sums of an infinite sequence"),
    ("C", "central"),
    ("dS / dcS", "dynamically (central) syndetic"),
    ("dT / dcT", "dynamically (central) thick"),
    ("dPS / dcPS", "dynamically (central) piecewise syndetic"),
];

pub fn render() -> String {
    let w = CONTAINMENTS.iter().map(|(a, _)| a.len()).max().unwrap_or(0);
    let mut s = format!("{:<w$}  ⊊  {}\n", "family", "superfamily");
    for (a, b) in CONTAINMENTS {
        s += &format!("{a:<w$}  ⊊  {b}\n");
    }
    s += "\n";
    for (k, v) in LEGEND {
        s += &format!("{k:<12} {v}\n");
    }
    s += "X*           sets meeting every member of X\n";
    s
}
