//! Kind B: roles `u v w x y z`, designated edge `ux`.
//!
//! After entry `u` sees 0 and 1 and `x` sees 0, 2 and 3; the cases split on
//! whether 0 is on `uu'` or on `uv`. The normalizing swaps run as bounded
//! searches over the swaps the case allows, toward the target coloring of
//! each case; the last stage recolors chains that avoid the configuration.

use super::engine::{Ext, Flow, Goal, Search, View};
use crate::graph::Edge;

const SEARCH_STATES: usize = 20_000;

pub(super) fn run(x: &mut Ext<'_>) -> Flow {
    x.enter("L3")?;
    if x.view().pc(x.r('u')) == Some(0) {
        case1(x)
    } else {
        case2(x)
    }
}

fn col(v: &View<'_, '_>, a: char, b: char) -> Option<u8> {
    v.col(v.r(a), v.r(b))
}

/// Target of the first case; `flip` reads 2 and 3 exchanged.
fn c1_target(v: &View<'_, '_>, flip: bool) -> bool {
    let (two, three) = if flip { (3, 2) } else { (2, 3) };
    v.entry_ok()
        && v.pc(v.r('u')) == Some(0)
        && col(v, 'u', 'v') == Some(1)
        && col(v, 'v', 'w') == Some(two)
        && col(v, 'w', 'x') == Some(three)
        && v.pc(v.r('w')) == Some(1)
        && v.pc(v.r('x')) == Some(0)
        && col(v, 'x', 'y') == Some(two)
        && col(v, 'y', 'z') == Some(three)
        && v.misses(v.r('z'), 0)
}

fn case1(x: &mut Ext<'_>) -> Flow {
    let l = "L3.C1";
    let goal = |v: &View<'_, '_>| {
        if !v.entry_ok() || v.pc(v.r('u')) != Some(0) {
            Goal::Exit
        } else if c1_target(v, false) || c1_target(v, true) {
            Goal::Reached
        } else {
            Goal::Pending
        }
    };
    x.search(
        l,
        &Search {
            plain: &[
                x.moves("wz", &[(1, 2), (1, 3), (0, 2), (0, 3)]),
                x.moves("u", &[(0, 2), (0, 3)]),
            ]
            .concat(),
            outside: &[],
            local: true,
            goal: &goal,
            max_depth: 12,
            max_states: SEARCH_STATES,
        },
    )?;
    if c1_target(&x.view(), true) {
        x.swap_23(l);
    }
    terminal(x, "L3.C1.end")
}

fn terminal(x: &mut Ext<'_>, l: &str) -> Flow {
    x.search(
        l,
        &Search {
            plain: &[],
            outside: &[(0, 1), (1, 2), (1, 3)],
            local: true,
            goal: &|_| Goal::Pending,
            max_depth: 3,
            max_states: SEARCH_STATES,
        },
    )?;
    x.fall(l)
}

/// Colors at `u`, `v`, `w`, `x` that the second case holds fixed.
fn frame2(v: &View<'_, '_>) -> bool {
    v.entry_ok()
        && v.pc(v.r('u')) == Some(1)
        && col(v, 'u', 'v') == Some(0)
        && col(v, 'w', 'x') == Some(2)
        && col(v, 'v', 'w') == Some(3)
        && v.pc(v.r('w')) == Some(1)
        && v.pc(v.r('x')) == Some(3)
        && col(v, 'x', 'y') == Some(0)
}

fn case2(x: &mut Ext<'_>) -> Flow {
    let l = "L3.C2";
    let (u, w, xx) = (x.r('u'), x.r('w'), x.r('x'));
    let wx = Edge::new(w, xx);
    if x.view().col(w, xx) == Some(0) {
        let l = "L3.C2.wx0";
        if x.view().sees(w, 1) {
            let c = x.view().missing(w).iter().find(|&c| c == 2 || c == 3);
            let Some(c) = c else { return x.fall(l) };
            x.swap(l, w, 1, c)?;
        }
        let v = x.view();
        x.expect(
            v.col(w, xx) == Some(0) && v.misses(w, 1) && v.misses(xx, 1),
            l,
        )?;
        x.assign(l, &[(wx, Some(1))])?;
        return x.redispatch(l);
    }
    if x.view().col(w, xx) == Some(3) {
        x.swap_23(l);
    }
    let v = x.view();
    x.expect(v.col(w, xx) == Some(2), l)?;
    if v.pc(w) == Some(0) {
        if v.sees(w, 1) {
            x.swap(l, w, 1, 3)?;
        }
        return x.fall(l);
    }
    if col(&v, 'v', 'w') == Some(1) {
        let l = "L3.C2.vw1";
        x.expect(v.pc(w) == Some(3), l)?;
        x.swap_roles(l, 'u', 'w')?;
        x.assign(l, &[(wx, None), (Edge::new(u, xx), Some(2))])?;
        return x.redispatch(l);
    }
    x.expect(col(&v, 'v', 'w') == Some(3) && v.pc(w) == Some(1), l)?;
    if col(&v, 'x', 'y') == Some(3) {
        x.swap(l, xx, 0, 3)?;
    }
    if !frame2(&x.view()) {
        return x.redispatch(l);
    }
    let goal = |v: &View<'_, '_>| {
        if !frame2(v) {
            Goal::Exit
        } else if col(v, 'y', 'z') == Some(2) && v.misses(v.r('z'), 0) {
            Goal::Reached
        } else {
            Goal::Pending
        }
    };
    x.search(
        l,
        &Search {
            plain: &[
                x.moves("z", &[(0, 1), (0, 2), (1, 2), (1, 3), (0, 3)]),
                x.moves("x", &[(0, 3)]),
            ]
            .concat(),
            outside: &[],
            local: true,
            goal: &goal,
            max_depth: 12,
            max_states: SEARCH_STATES,
        },
    )?;
    let l = "L3.C2.end";
    x.swap(l, x.r('z'), 0, 2)?;
    x.redispatch(l)
}
