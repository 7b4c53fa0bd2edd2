use std::collections::BTreeSet;

/// Issues nominal names `i0, i1, i2, ...`, skipping anything reserved.
#[derive(Clone, Debug, Default)]
pub struct FreshNominals {
    next: usize,
    used: BTreeSet<String>,
    issued: Vec<String>,
}

impl FreshNominals {
    pub fn new() -> Self {
        Self::default()
    }

    /// Generator whose counter starts at `start`.
    pub fn starting_at(start: usize) -> Self {
        FreshNominals { next: start, ..Self::default() }
    }

    /// Mark names as taken so they are never issued.
    pub fn reserve<I, S>(&mut self, names: I)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.used.extend(names.into_iter().map(Into::into));
    }

    pub fn fresh(&mut self) -> String {
        loop {
            let name = format!("i{}", self.next);
            self.next += 1;
            if self.used.insert(name.clone()) {
                self.issued.push(name.clone());
                return name;
            }
        }
    }

    pub fn issued(&self) -> &[String] {
        &self.issued
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_generator_starts_at_zero() {
        assert_eq!(FreshNominals::new().fresh(), "i0");
    }

    #[test]
    fn reserved_names_are_skipped() {
        let mut g = FreshNominals::new();
        g.reserve(["i0", "i1"]);
        assert_eq!(g.fresh(), "i2");
    }

    #[test]
    fn draws_are_distinct() {
        let mut g = FreshNominals::new();
        let names: Vec<_> = (0..5).map(|_| g.fresh()).collect();
        assert_eq!(names.last().unwrap(), "i4");
        let set: BTreeSet<_> = names.iter().collect();
        assert_eq!(set.len(), 5);
        assert_eq!(g.issued(), names.as_slice());
    }
}
