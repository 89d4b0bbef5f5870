//! Baker-Campbell-Hausdorff series up to degree six.
//!
//! `log(exp X exp Y)` is computed once in the truncated free associative algebra on `X, Y` and
//! turned into Lie form by the Dynkin-Specht-Wever projection: a homogeneous Lie element `P` of
//! degree `d` equals `(1/d) sum_w c_w [..[w_1, w_2], .., w_d]`. Words are stored in a trie so
//! evaluation shares the nested brackets of common prefixes.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::Zero;

use super::algebra::{NilLieAlgebra, MAX_CLASS};
use crate::exactalg::{factorial, int, Coefficient, Rat};

type Word = Vec<u8>;
type Element = BTreeMap<Word, Rat>;

#[derive(Debug, Default)]
struct Node {
    coeff: Rat,
    children: [Option<Box<Node>>; 2],
}

impl Node {
    fn insert(&mut self, word: &[u8], coeff: Rat) {
        let mut node = self;
        for &letter in word {
            node = node.children[letter as usize].get_or_insert_with(Box::default);
        }
        node.coeff += coeff;
    }
}

fn truncated_product(a: &Element, b: &Element, max: usize) -> Element {
    let mut out = Element::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            if wa.len() + wb.len() > max {
                continue;
            }
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            *out.entry(w).or_insert_with(Rat::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Homogeneous coefficients of `log(exp X exp Y)` as words in the letters 0 = X, 1 = Y.
fn free_log(max: usize) -> Element {
    // W = exp(X) exp(Y) - 1 = sum_{i+j>=1} X^i Y^j / (i! j!)
    let mut w = Element::new();
    for i in 0..=max {
        for j in 0..=(max - i) {
            if i + j == 0 {
                continue;
            }
            let mut word = vec![0u8; i];
            word.extend(std::iter::repeat_n(1u8, j));
            w.insert(word, (factorial(i) * factorial(j)).recip());
        }
    }
    let mut result = Element::new();
    let mut power = w.clone();
    for k in 1..=max {
        let c = if k % 2 == 1 { int(1) } else { int(-1) } / int(k as i64);
        for (word, v) in &power {
            *result.entry(word.clone()).or_insert_with(Rat::zero) += v * &c;
        }
        power = truncated_product(&power, &w, max);
    }
    result.retain(|_, c| !c.is_zero());
    result
}

fn table() -> &'static Node {
    static TABLE: OnceLock<Node> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut root = Node::default();
        for (word, c) in free_log(MAX_CLASS) {
            // [a, a] = 0 kills every word opening with a repeated letter
            if word.len() >= 2 && word[0] == word[1] {
                continue;
            }
            let d = int(word.len() as i64);
            root.insert(&word, c / d);
        }
        root
    })
}

/// The BCH product `log(exp x exp y)`, truncated at the nilpotency class of the algebra.
pub fn bch<T: Coefficient>(alg: &NilLieAlgebra, x: &[T], y: &[T]) -> Vec<T> {
    bch_to_order(alg, x, y, alg.class().max(1))
}

/// The BCH series truncated after brackets of length `order` (at most the table depth).
pub fn bch_to_order<T: Coefficient>(alg: &NilLieAlgebra, x: &[T], y: &[T], order: usize) -> Vec<T> {
    assert!(order <= MAX_CLASS, "BCH order {order} beyond table");
    let mut acc: Vec<T> = x.to_vec();
    if alg.dim() == 0 {
        return acc;
    }
    for (a, b) in acc.iter_mut().zip(y) {
        *a = a.c_add(b);
    }
    if order < 2 || alg.is_abelian() {
        return acc;
    }
    let root = table();
    let gens = [x, y];
    for (first, child) in root.children.iter().enumerate() {
        let Some(child) = child else { continue };
        // depth-one terms are already in acc
        for (second, grand) in child.children.iter().enumerate() {
            let Some(grand) = grand else { continue };
            let value = alg.bracket_generic(gens[first], gens[second]);
            walk(alg, grand, value, 2, order, &gens, &mut acc);
        }
    }
    acc
}

fn walk<T: Coefficient>(
    alg: &NilLieAlgebra,
    node: &Node,
    value: Vec<T>,
    depth: usize,
    order: usize,
    gens: &[&[T]; 2],
    acc: &mut Vec<T>,
) {
    if value.iter().all(Coefficient::c_is_zero) {
        return;
    }
    if !node.coeff.is_zero() {
        for (a, v) in acc.iter_mut().zip(&value) {
            *a = a.c_add(&v.c_scale(&node.coeff));
        }
    }
    if depth == order {
        return;
    }
    for (letter, child) in node.children.iter().enumerate() {
        let Some(child) = child else { continue };
        let next = alg.bracket_generic(&value, gens[letter]);
        walk(alg, child, next, depth + 1, order, gens, acc);
    }
}
