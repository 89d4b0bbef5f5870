use crate::affine::AffTrans;
use crate::closure::{GroupPresentation, Word};
use crate::error::{Error, Result};

/// A homomorphism between presented groups, given by a target word for each source generator.
#[derive(Debug, Clone)]
pub struct GroupMorphism {
    source: GroupPresentation,
    target: GroupPresentation,
    images: Vec<Word>,
}

impl GroupMorphism {
    /// Builds the morphism and checks that every source relator maps to the identity.
    pub fn new(source: GroupPresentation, target: GroupPresentation, images: Vec<Word>) -> Result<Self> {
        let phi = Self::unverified(source, target, images)?;
        phi.verify()?;
        Ok(phi)
    }

    /// Builds the morphism checking only the shape of the data.
    pub fn unverified(source: GroupPresentation, target: GroupPresentation, images: Vec<Word>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::InvalidMorphism(format!(
                "{} images for {} source generators",
                images.len(),
                source.len()
            )));
        }
        if images.iter().any(|w| w.max_generator().is_some_and(|g| g >= target.len())) {
            return Err(Error::InvalidMorphism("image word uses an unknown target generator".into()));
        }
        Ok(GroupMorphism {
            source,
            target,
            images,
        })
    }

    pub fn identity(pres: &GroupPresentation) -> Self {
        let images = (0..pres.len()).map(Word::generator).collect();
        GroupMorphism {
            source: pres.clone(),
            target: pres.clone(),
            images,
        }
    }

    pub fn source(&self) -> &GroupPresentation {
        &self.source
    }

    pub fn target(&self) -> &GroupPresentation {
        &self.target
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// The first source relator whose image is not the identity, if any.
    pub fn violated_relator(&self) -> Option<&Word> {
        self.source
            .relators()
            .iter()
            .find(|r| !self.image(r).is_identity())
    }

    pub fn verify(&self) -> Result<()> {
        match self.violated_relator() {
            None => Ok(()),
            Some(r) => Err(Error::RelatorViolated(r.fmt_with(self.source.names()))),
        }
    }

    pub fn image_word(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }

    pub fn image(&self, w: &Word) -> AffTrans {
        self.target.eval_word(&self.image_word(w))
    }

    pub fn image_of_generator(&self, i: usize) -> AffTrans {
        self.target.eval_word(&self.images[i])
    }
}

/// Checks every relator of the source; reports the first violated one.
pub fn verify_morphism(phi: &GroupMorphism) -> Result<()> {
    phi.verify()
}

/// Words in the source generators whose images are the target generators, one per target generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub words: Vec<Word>,
}

impl Certificate {
    pub fn check(&self, phi: &GroupMorphism) -> Result<()> {
        let target = phi.target();
        if self.words.len() != target.len() {
            return Err(Error::InvalidCertificate(format!(
                "{} expressions for {} target generators",
                self.words.len(),
                target.len()
            )));
        }
        for (i, w) in self.words.iter().enumerate() {
            if w.max_generator().is_some_and(|g| g >= phi.source().len()) {
                return Err(Error::InvalidCertificate("expression uses an unknown source generator".into()));
            }
            if phi.image(w) != *target.generator(i) {
                return Err(Error::InvalidCertificate(format!(
                    "`{}` does not map to `{}`",
                    w.fmt_with(phi.source().names()),
                    target.names()[i]
                )));
            }
        }
        Ok(())
    }
}
