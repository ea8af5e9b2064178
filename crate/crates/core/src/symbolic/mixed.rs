//! `Z × F` with `F` free on symbols `⟨g,h⟩`, and the automorphisms used to
//! realize a 3-cocycle of a finite group as an obstruction.

use serde::Serialize;

use super::free::FreeWord;
use crate::cochain::{Cochain, Complex};
use crate::coeff::{CoeffModule, ModElement};
use crate::group::{FiniteGroup, Group};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MixedElement {
    pub z: ModElement,
    pub word: FreeWord,
}

impl MixedElement {
    pub fn central(z: ModElement) -> Self {
        Self { z, word: FreeWord::empty() }
    }
}

#[derive(Debug, Clone)]
pub struct MixedGroup<'a> {
    pub module: &'a CoeffModule,
}

impl Group for MixedGroup<'_> {
    type Elem = MixedElement;

    fn identity(&self) -> MixedElement {
        MixedElement::central(self.module.zero())
    }

    fn mul(&self, a: &MixedElement, b: &MixedElement) -> MixedElement {
        MixedElement { z: self.module.add(&a.z, &b.z), word: a.word.mul(&b.word) }
    }

    fn inv(&self, a: &MixedElement) -> MixedElement {
        MixedElement { z: self.module.neg(&a.z), word: a.word.inv() }
    }
}

/// Generator images `^{φ(g)}⟨h,i⟩ = (α(g,h,i), ⟨g,h⟩⟨gh,i⟩⟨g,hi⟩^{-1})`.
#[derive(Debug, Clone)]
pub struct MacLane<'a> {
    pub m: &'a FiniteGroup,
    pub module: &'a CoeffModule,
    /// `images[g][symbol]`
    images: Vec<Vec<MixedElement>>,
    /// `α(g, h, i)` per symbol `⟨h,i⟩`
    shift: Vec<Vec<ModElement>>,
    pos: Vec<usize>,
    elems: Vec<usize>,
}

impl<'a> MacLane<'a> {
    /// `alpha` must be a normalized 3-cochain on `m` with values in `module`.
    pub fn new(m: &'a FiniteGroup, module: &'a CoeffModule, alpha: &Cochain) -> Self {
        let elems: Vec<usize> = m.non_identity().collect();
        let mut pos = vec![usize::MAX; m.order()];
        for (p, &g) in elems.iter().enumerate() {
            pos[g] = p;
        }
        let mut this = Self { m, module, images: Vec::new(), shift: Vec::new(), pos, elems };
        let c = Complex::new(m, module);
        for g in m.elements() {
            let mut imgs = Vec::with_capacity(this.alphabet_size());
            let mut shifts = Vec::with_capacity(this.alphabet_size());
            for s in 0..this.alphabet_size() {
                let (h, i) = this.pair(s);
                let a = c.value(alpha, &[g, h, i]).to_vec();
                let word = this
                    .symbol(g, h)
                    .mul(&this.symbol(m.mul(g, h), i))
                    .mul(&this.symbol(g, m.mul(h, i)).inv());
                imgs.push(MixedElement { z: a.clone(), word });
                shifts.push(a);
            }
            this.images.push(imgs);
            this.shift.push(shifts);
        }
        this
    }

    pub fn alphabet_size(&self) -> usize {
        self.elems.len() * self.elems.len()
    }

    /// The pair `(g, h)` behind a symbol.
    pub fn pair(&self, s: usize) -> (usize, usize) {
        let k = self.elems.len();
        (self.elems[s / k], self.elems[s % k])
    }

    /// `⟨g,h⟩`, the empty word when either argument is the identity.
    pub fn symbol(&self, g: usize, h: usize) -> FreeWord {
        let e = self.m.identity_index();
        if g == e || h == e {
            FreeWord::empty()
        } else {
            FreeWord::letter(self.pos[g] * self.elems.len() + self.pos[h])
        }
    }

    pub fn symbol_element(&self, g: usize, h: usize) -> MixedElement {
        MixedElement { z: self.module.zero(), word: self.symbol(g, h) }
    }

    pub fn group(&self) -> MixedGroup<'a> {
        MixedGroup { module: self.module }
    }

    /// `^{φ(g)} x`, letter by letter; inverse letters map to inverse images.
    pub fn apply(&self, g: usize, x: &MixedElement) -> MixedElement {
        let mut z = self.module.act(g, &x.z);
        let mut word = FreeWord::empty();
        for &(s, e) in x.word.letters() {
            let img = &self.images[g][s];
            if e > 0 {
                z = self.module.add(&z, &self.shift[g][s]);
                word = word.mul(&img.word);
            } else {
                z = self.module.sub(&z, &self.shift[g][s]);
                word = word.mul(&img.word.inv());
            }
        }
        MixedElement { z, word }
    }

    /// Module basis vectors and single letters; an endomorphism of `Z × F`
    /// is determined by their images.
    pub fn generators(&self) -> Vec<MixedElement> {
        let mut out: Vec<MixedElement> = (0..self.module.dim())
            .map(|i| {
                let mut z = self.module.zero();
                z[i] = 1;
                MixedElement::central(z)
            })
            .collect();
        out.extend((0..self.alphabet_size()).map(|s| MixedElement { z: self.module.zero(), word: FreeWord::letter(s) }));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_acts_trivially() {
        let m = FiniteGroup::cyclic(3);
        let z = CoeffModule::cyclic(3);
        let c = Complex::new(&m, &z);
        let alpha = c.zero(3);
        let ml = MacLane::new(&m, &z, &alpha);
        assert_eq!(ml.alphabet_size(), 4);
        for x in ml.generators() {
            assert_eq!(ml.apply(0, &x), x);
        }
        let x = MixedElement::central(vec![2]);
        assert_eq!(ml.apply(1, &x), x);
    }
}
