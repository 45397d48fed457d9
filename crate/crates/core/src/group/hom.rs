use super::Group;
use crate::error::{Error, Result};
use crate::set::ElementSet;

/// A map between groups given by the image of every domain element.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub domain: Group,
    pub codomain: Group,
    pub image: Vec<usize>,
}

impl GroupHom {
    /// Checks the homomorphism laws and returns the map.
    ///
    /// Domains of at most 5000 elements are checked on all pairs; larger ones
    /// on every (element, generator) pair, which already forces the law.
    pub fn new(domain: Group, codomain: Group, image: Vec<usize>) -> Result<GroupHom> {
        let h = GroupHom { domain, codomain, image };
        h.validate()?;
        Ok(h)
    }

    pub(crate) fn new_unchecked(domain: Group, codomain: Group, image: Vec<usize>) -> GroupHom {
        GroupHom { domain, codomain, image }
    }

    pub fn validate(&self) -> Result<()> {
        let (d, c) = (&self.domain, &self.codomain);
        if self.image.len() != d.order() {
            return Err(Error::InvalidHom(format!(
                "image has {} entries for a domain of order {}",
                self.image.len(),
                d.order()
            )));
        }
        if let Some(&bad) = self.image.iter().find(|&&y| y >= c.order()) {
            return Err(Error::InvalidHom(format!("image {bad} outside codomain")));
        }
        if self.image[0] != 0 {
            return Err(Error::InvalidHom("identity not mapped to identity".into()));
        }
        let check = |a: usize, b: usize| -> Result<()> {
            if self.image[d.mul(a, b)] != c.mul(self.image[a], self.image[b]) {
                Err(Error::InvalidHom(format!("f({a}*{b}) != f({a})*f({b})")))
            } else {
                Ok(())
            }
        };
        if d.order() <= 5000 {
            for a in d.elements() {
                for b in d.elements() {
                    check(a, b)?;
                }
            }
        } else {
            for a in d.elements() {
                for &s in d.generators() {
                    check(a, s)?;
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    /// Preimage of the identity.
    pub fn kernel(&self) -> ElementSet {
        ElementSet::from_elements(self.domain.order(), self.domain.elements().filter(|&x| self.image[x] == 0))
    }

    pub fn image_set(&self) -> ElementSet {
        ElementSet::from_elements(self.codomain.order(), self.image.iter().copied())
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.order() == self.codomain.order() && self.image_set().size() == self.codomain.order()
    }

    /// Image of a subset.
    pub fn map_set(&self, s: &ElementSet) -> ElementSet {
        ElementSet::from_elements(self.codomain.order(), s.iter().map(|x| self.image[x]))
    }
}
