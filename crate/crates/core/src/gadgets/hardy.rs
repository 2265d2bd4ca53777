use serde::{Deserialize, Serialize};

use super::builder::{rwb, Builder};
use super::{Gadget, GadgetError, Lang};
use crate::encodings::staircase;
use crate::pcs::{Config, Op, Pcs};
use crate::word::{Letter, Word};

/// Channel indices of the Hardy gadgets: the ordinal code, the counter, and scratch.
pub const O: usize = 0;
pub const C: usize = 1;
pub const T: usize = 2;
pub const HARDY_CHANNELS: [&str; 3] = ["o", "c", "t"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Fwd,
    Bwd,
}

fn dollar(d: Letter) -> Letter {
    d + 1
}

fn p_d(d: Letter) -> Lang {
    Lang::proper(i32::from(d))
}

/// `(α+1, n) → (α, n+1)`.
pub(crate) fn add_s1(b: &mut Builder, d: Letter, p: usize, r: usize, prefix: &str) -> Result<(), GadgetError> {
    let s = dollar(d);
    let m1 = b.fresh(prefix);
    let q = b.state(&format!("{prefix}.q"));
    b.expand_meta(p, m1, O, &p_d(d), super::MetaMode::ReadWriteBack, prefix)?;
    b.chain(m1, &[(O, Op::Read, d), (O, Op::Read, s), (O, Op::Write, s)], q, prefix);
    b.check_word(q, C, &[0], q, prefix);
    b.chain(q, &[(C, Op::Write, 0), (C, Op::Read, s), (C, Op::Write, s)], r, prefix);
    Ok(())
}

/// `(α, n+1) → (α+1, n)`.
pub(crate) fn add_s2(b: &mut Builder, d: Letter, p: usize, r: usize, prefix: &str) -> Result<(), GadgetError> {
    let s = dollar(d);
    let m1 = b.fresh(prefix);
    let q = b.state(&format!("{prefix}.q"));
    b.read_word(p, C, &[0], m1, prefix);
    b.expand_meta(
        m1,
        q,
        C,
        &Lang::Cat(vec![Lang::star(Lang::Letter(0)), Lang::Letter(s)]),
        super::MetaMode::ReadWriteBack,
        prefix,
    )?;
    let m2 = b.fresh(prefix);
    b.expand_meta(q, m2, O, &p_d(d), super::MetaMode::ReadWriteBack, prefix)?;
    b.chain(m2, &[(O, Op::Write, d), (O, Op::Read, s), (O, Op::Write, s)], r, prefix);
    Ok(())
}

/// Reads `y_d ⋯ y_{a+1}` (written back) and copies `y_a` from o to t.
fn split_at_level(b: &mut Builder, d: Letter, a: Letter, p: usize, prefix: &str) -> Result<usize, GadgetError> {
    let m1 = b.fresh(prefix);
    let m2 = b.fresh(prefix);
    b.meta(p, m1, &Lang::proper_chain(i32::from(d), i32::from(a) + 1), &rwb(O), prefix)?;
    b.meta(m1, m2, &Lang::proper(i32::from(a)), &[(O, Op::Read), (T, Op::Write)], prefix)?;
    Ok(m2)
}

/// `(λ, n) → (λ_n, n)`, one component per decomposition level `a < d`.
pub(crate) fn add_s3(b: &mut Builder, d: Letter, p: usize, r: usize, prefix: &str) -> Result<(), GadgetError> {
    let s = dollar(d);
    for a in 0..d {
        let pre = format!("{prefix}.a{a}");
        let pa = b.state(&format!("{pre}.p"));
        let qa = b.state(&format!("{pre}.q"));
        let ra = b.state(&format!("{pre}.r"));
        b.eps(p, pa);
        let m = split_at_level(b, d, a, pa, &pre)?;
        b.chain(
            m,
            &[(O, Op::Read, a), (O, Op::Read, a + 1), (T, Op::Write, a + 1), (T, Op::Read, s), (T, Op::Write, s)],
            qa,
            &pre,
        );
        // one copy of y_a (a+1) per counter unit
        let l1 = b.fresh(&pre);
        let l2 = b.fresh(&pre);
        b.check_word(qa, C, &[0], l1, &pre);
        b.meta(l1, l2, &Lang::any(d), &[(T, Op::Read), (T, Op::Write), (O, Op::Write)], &pre)?;
        b.check_word(l2, T, &[s], qa, &pre);
        let e1 = b.fresh(&pre);
        let e2 = b.fresh(&pre);
        b.check_word(qa, C, &[s], e1, &pre);
        b.meta(e1, e2, &Lang::any(d), &[(T, Op::Read)], &pre)?;
        let mut tail = staircase(a + 2, d).into_letters();
        tail.push(s);
        let mut ops = vec![(T, Op::Read, s), (T, Op::Write, s)];
        ops.extend(tail.iter().flat_map(|&x| [(O, Op::Read, x), (O, Op::Write, x)]));
        b.chain(e2, &ops, ra, &pre);
        b.eps(ra, r);
    }
    Ok(())
}

/// `(λ_n, n) → (λ, n)` for `n ≥ 1`.
pub(crate) fn add_s4(b: &mut Builder, d: Letter, p: usize, r: usize, prefix: &str) -> Result<(), GadgetError> {
    let s = dollar(d);
    for a in 0..d {
        let pre = format!("{prefix}.a{a}");
        let pa = b.state(&format!("{pre}.p"));
        let qa = b.state(&format!("{pre}.q"));
        let ra = b.state(&format!("{pre}.r"));
        b.eps(p, pa);
        let m = split_at_level(b, d, a, pa, &pre)?;
        b.chain(m, &[(O, Op::Read, a + 1), (T, Op::Write, a + 1), (T, Op::Read, s), (T, Op::Write, s)], qa, &pre);
        // consume the remaining n-1 copies of y_a (a+1), checking each against t
        let l1 = b.fresh(&pre);
        let l2 = b.fresh(&pre);
        b.check_word(qa, C, &[0], l1, &pre);
        b.meta(l1, l2, &Lang::any(d), &[(T, Op::Read), (T, Op::Write), (O, Op::Read)], &pre)?;
        b.check_word(l2, T, &[s], qa, &pre);
        let e1 = b.fresh(&pre);
        let e2 = b.fresh(&pre);
        b.chain(qa, &[(C, Op::Read, 0), (C, Op::Write, 0), (C, Op::Read, s), (C, Op::Write, s)], e1, &pre);
        b.meta(e1, e2, &Lang::any(a), &[(T, Op::Read), (O, Op::Write)], &pre)?;
        let mut ops =
            vec![(T, Op::Read, a + 1), (O, Op::Write, a), (O, Op::Write, a + 1), (T, Op::Read, s), (T, Op::Write, s)];
        let mut tail = staircase(a + 2, d).into_letters();
        tail.push(s);
        ops.extend(tail.iter().flat_map(|&x| [(O, Op::Read, x), (O, Op::Write, x)]));
        b.chain(e2, &ops, ra, &pre);
        b.eps(ra, r);
    }
    Ok(())
}

type AddFn = fn(&mut Builder, Letter, usize, usize, &str) -> Result<(), GadgetError>;

fn single(d: Letter, add: AddFn, prefix: &str) -> Result<Gadget, GadgetError> {
    let mut b = Builder::new(d + 1, &HARDY_CHANNELS);
    let (p, r) = (b.state("p"), b.state("r"));
    add(&mut b, d, p, r, prefix)?;
    Ok(Gadget { pcs: b.finish("p")?, entry: "p".into(), exit: "r".into() })
}

pub fn build_s1(d: Letter) -> Result<Gadget, GadgetError> {
    single(d, add_s1, "s1")
}

pub fn build_s2(d: Letter) -> Result<Gadget, GadgetError> {
    single(d, add_s2, "s2")
}

pub fn build_s3(d: Letter) -> Result<Gadget, GadgetError> {
    single(d, add_s3, "s3")
}

pub fn build_s4(d: Letter) -> Result<Gadget, GadgetError> {
    single(d, add_s4, "s4")
}

/// Hardy-step loops on `hub`: S1 and S3 forward, S2 and S4 backward.
pub(crate) fn add_hardy_loops(
    b: &mut Builder,
    d: Letter,
    dir: Direction,
    hub: usize,
    prefix: &str,
) -> Result<(), GadgetError> {
    let (succ, limit): (AddFn, AddFn) = match dir {
        Direction::Fwd => (add_s1, add_s3),
        Direction::Bwd => (add_s2, add_s4),
    };
    let names = match dir {
        Direction::Fwd => ("s1", "s3"),
        Direction::Bwd => ("s2", "s4"),
    };
    succ(b, d, hub, hub, &format!("{prefix}{}", names.0))?;
    limit(b, d, hub, hub, &format!("{prefix}{}", names.1))
}

/// Weak Hardy computer for `Ω_{d+1}` with states `p_init` and `p_final`.
pub fn build_weak_hardy(d: Letter, dir: Direction) -> Result<Gadget, GadgetError> {
    let mut b = Builder::new(d + 1, &HARDY_CHANNELS);
    let hub = b.state("p_init");
    let fin = b.state("p_final");
    add_hardy_loops(&mut b, d, dir, hub, "")?;
    b.check_word(hub, T, &[dollar(d)], fin, "exit");
    Ok(Gadget { pcs: b.finish("p_init")?, entry: "p_init".into(), exit: "p_final".into() })
}

/// `(state, x$, 0ⁿ$, $)`.
pub fn hardy_config(pcs: &Pcs, state: &str, code: &[Letter], n: usize) -> Result<Config, GadgetError> {
    let s = pcs.level();
    let mut o = code.to_vec();
    o.push(s);
    let mut c = vec![0; n];
    c.push(s);
    Ok(Config::new(pcs.state_index(state)?, vec![Word::new(o), Word::new(c), Word::new(vec![s])]))
}

/// Inverse of [`hardy_config`] on the channel contents: `(x, n)` when the
/// channels read `x$`, `0ⁿ$`, `$` with `x` free of `$`.
pub fn read_hardy_config(pcs: &Pcs, c: &Config) -> Option<(Word, usize)> {
    let s = pcs.level();
    let split =
        |w: &Word| w.split_last().filter(|(l, rest)| **l == s && !rest.contains(&s)).map(|(_, rest)| rest.to_vec());
    let o = split(&c.channels[O])?;
    let cnt = split(&c.channels[C])?;
    let t = split(&c.channels[T])?;
    (t.is_empty() && cnt.iter().all(|&x| x == 0)).then(|| (Word::new(o), cnt.len()))
}
