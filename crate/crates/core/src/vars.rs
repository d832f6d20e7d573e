//! Interned variable identifiers.
//!
//! Every module shares one fixed registry: id 0 is the independent
//! variable `x`, and id `j + 1` is the jet variable `y^(j)` (so `y` is
//! id 1, `y'` is id 2, and so on). The identifier order doubles as the
//! variable order underlying the global monomial order.

/// An interned variable identifier.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(pub u32);

impl Var {
    /// The independent variable `x`.
    pub const X: Var = Var(0);
    /// The dependent variable `y` (zeroth jet order).
    pub const Y: Var = Var(1);

    /// The jet variable `y^(order)`; order 0 is `y` itself.
    pub fn y(order: u32) -> Var {
        Var(order + 1)
    }

    /// Derivative order of a jet variable, or `None` for `x`.
    pub fn order(self) -> Option<u32> {
        self.0.checked_sub(1)
    }

    /// Canonical text name: `x`, `y`, `y'`, `y''`, `y'''`, then `y^(j)`.
    pub fn name(self) -> String {
        match self.order() {
            None => "x".to_string(),
            Some(0) => "y".to_string(),
            Some(j @ 1..=3) => format!("y{}", "'".repeat(j as usize)),
            Some(j) => format!("y^({j})"),
        }
    }

    /// LaTeX name: `x`, `y`, `y'`, `y''`, `y'''`, then `y^{(j)}`.
    pub fn latex(self) -> String {
        match self.order() {
            Some(j @ 4..) => format!("y^{{({j})}}"),
            _ => self.name(),
        }
    }
}

/// Look up a variable by any accepted spelling: `x`, `y`, primed forms
/// (`y'`, `y''`, ...), indexed forms (`y^(j)`), or the `yj` shorthand.
pub fn lookup(name: &str) -> Option<Var> {
    if name == "x" {
        return Some(Var::X);
    }
    let rest = name.strip_prefix('y')?;
    if rest.is_empty() {
        return Some(Var::Y);
    }
    if rest.chars().all(|c| c == '\'') {
        return Some(Var::y(rest.len() as u32));
    }
    if let Ok(j) = rest.parse::<u32>() {
        return Some(Var::y(j));
    }
    let j = rest.strip_prefix("^(")?.strip_suffix(')')?;
    j.parse::<u32>().ok().map(Var::y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_follow_prime_then_index_convention() {
        assert_eq!(Var::X.name(), "x");
        assert_eq!(Var::Y.name(), "y");
        assert_eq!(Var::y(1).name(), "y'");
        assert_eq!(Var::y(3).name(), "y'''");
        assert_eq!(Var::y(4).name(), "y^(4)");
        assert_eq!(Var::y(10).name(), "y^(10)");
    }

    #[test]
    fn lookup_accepts_all_spellings() {
        assert_eq!(lookup("x"), Some(Var::X));
        assert_eq!(lookup("y"), Some(Var::Y));
        assert_eq!(lookup("y''"), Some(Var::y(2)));
        assert_eq!(lookup("y2"), Some(Var::y(2)));
        assert_eq!(lookup("y^(7)"), Some(Var::y(7)));
        assert_eq!(lookup("z"), None);
        assert_eq!(lookup("y^("), None);
    }

    #[test]
    fn order_of_x_is_none() {
        assert_eq!(Var::X.order(), None);
        assert_eq!(Var::y(5).order(), Some(5));
    }
}
