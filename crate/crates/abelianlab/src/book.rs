//! Runs the code blocks of the guide in `book/` and the README as
//! doctests, so neither can drift from the library.  `cargo test --doc`
//! picks these up.

#[doc = include_str!("../../../README.md")]
pub struct Readme;

#[doc = include_str!("../../../book/src/words.md")]
pub struct WordsChapter;

#[doc = include_str!("../../../book/src/complexity.md")]
pub struct ComplexityChapter;

#[doc = include_str!("../../../book/src/regularity.md")]
pub struct RegularityChapter;

#[doc = include_str!("../../../book/src/reflection.md")]
pub struct ReflectionChapter;

#[doc = include_str!("../../../book/src/verification.md")]
pub struct VerificationChapter;
