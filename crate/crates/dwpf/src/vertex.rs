use std::fmt;

/// Bond states around one vertex, read with the orientation conventions used
/// by both model families: the vertical line runs bottom to top, the
/// horizontal line left to right, so `left` and `bottom` are incoming and
/// `top` and `right` are outgoing. States are 1-based, `1..=N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexIndex {
    pub top: u8,
    pub right: u8,
    pub left: u8,
    pub bottom: u8,
}

impl VertexIndex {
    pub fn new(top: u8, right: u8, left: u8, bottom: u8) -> Self {
        Self { top, right, left, bottom }
    }

    pub fn in_range(&self, n_states: u8) -> bool {
        [self.top, self.right, self.left, self.bottom]
            .iter()
            .all(|&s| (1..=n_states).contains(&s))
    }

    /// Relabels every state `s` as `N - s + 1`.
    pub fn conjugate(&self, n_states: u8) -> Self {
        let c = |s: u8| n_states - s + 1;
        Self::new(c(self.top), c(self.right), c(self.left), c(self.bottom))
    }
}

impl fmt::Display for VertexIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // (top,right; left,bottom), matching the superscript/subscript order
        // of the weight symbols.
        write!(f, "({},{};{},{})", self.top, self.right, self.left, self.bottom)
    }
}
