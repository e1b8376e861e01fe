//! Kind C: roles `s t u v w x y z`, designated edge `st`.
//!
//! After entry `t` sees 0 and 1 and `s` sees 0, 2 and 3; the cases split on
//! whether 0 is on `su`. The second case first moves 0 onto `sw`, handing
//! off to kind A when `w` is adjacent to `t` or `u`. Normalizing swaps run as
//! bounded searches toward the target coloring of each stage; the last stage
//! recolors chains that avoid the configuration.

use super::engine::{fail, Ext, Flow, Goal, Search, Stop, View};
use super::ExtendError;
use crate::coloring::Color;
use crate::graph::{Edge, Vertex};
use crate::structure::{ConfigKind, ConfigMatch};

const SEARCH_STATES: usize = 20_000;
const ALL_PAIRS: [(Color, Color); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub(super) fn run(x: &mut Ext<'_>) -> Flow {
    x.enter("L4")?;
    if col(&x.view(), 's', 'u') == Some(0) {
        case1(x)
    } else {
        case2(x)
    }
}

fn col(v: &View<'_, '_>, a: char, b: char) -> Option<Color> {
    v.col(v.r(a), v.r(b))
}

fn terminal(
    x: &mut Ext<'_>,
    l: &str,
    plain: &[(Vertex, Color, Color)],
    outside: &[(Color, Color)],
    depth: usize,
) -> Flow {
    x.search(
        l,
        &Search {
            plain,
            outside,
            local: true,
            goal: &|_| Goal::Pending,
            max_depth: depth,
            max_states: SEARCH_STATES,
        },
    )?;
    x.fall(l)
}

/// Target of the first case, up to exchanging `x` and `y`.
fn c1_target(v: &View<'_, '_>) -> bool {
    let vx = col(v, 'v', 'x');
    let vy = col(v, 'v', 'y');
    v.entry_ok()
        && col(v, 's', 'u') == Some(0)
        && col(v, 's', 'v') == Some(2)
        && col(v, 's', 'w') == Some(3)
        && v.misses(v.r('u'), 2)
        && v.pc(v.r('v')) == Some(3)
        && matches!((vx, vy), (Some(0), Some(1)) | (Some(1), Some(0)))
}

fn case1(x: &mut Ext<'_>) -> Flow {
    let l = "L4.C1";
    if col(&x.view(), 's', 'v') == Some(3) {
        x.swap_23(l);
    }
    let goal = |v: &View<'_, '_>| {
        if !v.entry_ok() || col(v, 's', 'u') != Some(0) {
            Goal::Exit
        } else if c1_target(v) {
            Goal::Reached
        } else {
            Goal::Pending
        }
    };
    x.search(
        l,
        &Search {
            plain: &[
                x.moves("u", &[(1, 2), (1, 3), (0, 2)]),
                x.moves("xy", &[(0, 2), (0, 3), (1, 2), (1, 3)]),
            ]
            .concat(),
            outside: &[],
            local: true,
            goal: &goal,
            max_depth: 10,
            max_states: SEARCH_STATES,
        },
    )?;
    if col(&x.view(), 'v', 'x') == Some(1) {
        x.swap_roles(l, 'x', 'y')?;
    }
    let plain = x.moves("xy", &[(1, 2), (1, 3)]);
    terminal(x, "L4.C1.end", &plain, &[(1, 2), (1, 3), (0, 2)], 3)
}

/// The 3-neighbor of `w` other than `z`.
fn z_hat(x: &Ext<'_>) -> Option<Vertex> {
    let (w, z) = (x.r('w'), x.r('z'));
    x.g.neighbors(w)
        .iter()
        .copied()
        .find(|&n| n != z && x.g.degree(n) == 3)
}

/// Colors at `s`, `t`, `u` that the second case holds fixed.
fn frame2(v: &View<'_, '_>) -> bool {
    v.entry_ok()
        && col(v, 's', 'w') == Some(0)
        && col(v, 's', 'u') == Some(2)
        && col(v, 's', 'v') == Some(3)
        && v.misses(v.r('u'), 0)
}

/// `w q` is colored 3 and `q` misses 0.
fn c2_target(v: &View<'_, '_>, q: Vertex) -> bool {
    frame2(v) && v.col(v.r('w'), q) == Some(3) && v.misses(q, 0)
}

fn case2(x: &mut Ext<'_>) -> Flow {
    let l = "L4.C2";
    hand_off(x)?;
    if col(&x.view(), 's', 'v') == Some(0) {
        move_zero(x)?;
    }
    if col(&x.view(), 's', 'u') == Some(3) {
        x.swap_23(l);
    }
    let v = x.view();
    x.expect(
        col(&v, 's', 'w') == Some(0) && col(&v, 's', 'u') == Some(2),
        l,
    )?;
    let u = x.r('u');
    if v.misses(u, 3) {
        x.swap(l, u, 1, 3)?;
        return x.fall(l);
    }
    let Some(zh) = z_hat(x) else { return x.fall(l) };
    let (xx, yy) = (x.r('x'), x.r('y'));
    let hat_role = (zh == xx || zh == yy).then_some(zh);
    let goal = |v: &View<'_, '_>| {
        if !frame2(v) {
            Goal::Exit
        } else if c2_target(v, v.r('z')) || c2_target(v, zh) {
            Goal::Reached
        } else {
            Goal::Pending
        }
    };
    let mut plain = x.moves("zu", &[(0, 1), (1, 2), (1, 3)]);
    plain.extend([(zh, 0, 1), (zh, 1, 2), (zh, 1, 3)]);
    x.search(
        l,
        &Search {
            plain: &plain,
            outside: &[],
            local: true,
            goal: &goal,
            max_depth: 10,
            max_states: SEARCH_STATES,
        },
    )?;
    if !c2_target(&x.view(), x.r('z')) {
        match hat_role {
            None => x.reassign(l, &[('z', zh)])?,
            Some(h) => {
                if h == xx {
                    x.swap_roles(l, 'x', 'y')?;
                }
                return case2a(x);
            }
        }
    }
    case2b(x)
}

fn kind_a(l: &str, named: &[(char, Vertex)]) -> Result<ConfigMatch, Stop> {
    ConfigMatch::from_named(ConfigKind::A, named)
        .or_else(|_| fail(ExtendError::FallThrough(l.to_string())))
}

/// Switches to kind A when `w` is adjacent to `u` or `t`. For `t` the color
/// of `su` moves to `st` and `su` becomes the uncolored edge.
fn hand_off(x: &mut Ext<'_>) -> Flow {
    let (s, t, u, w, z) = (x.r('s'), x.r('t'), x.r('u'), x.r('w'), x.r('z'));
    if x.g.has_edge(w, u) {
        let l = "L4.C2.wu";
        let m = kind_a(l, &[('v', s), ('z', t), ('w', w), ('x', u), ('y', z)])?;
        x.switch_match(l, m)?;
        return x.redispatch(l);
    }
    if x.g.has_edge(w, t) {
        let l = "L4.C2.wt";
        let su = x.view().col(s, u);
        let m = kind_a(l, &[('v', s), ('z', u), ('w', w), ('x', t), ('y', z)])?;
        x.switch_match(l, m)?;
        x.assign(l, &[(Edge::new(s, u), None), (Edge::new(s, t), su)])?;
        return x.redispatch(l);
    }
    Ok(())
}

/// Moves 0 from `sv` to `sw` by exchanging the roles of `v` and `w`.
fn move_zero(x: &mut Ext<'_>) -> Flow {
    let l = "L4.C2.sv0";
    let (w, z) = (x.r('w'), x.r('z'));
    let Some(zh) = z_hat(x) else { return x.fall(l) };
    let (v, xx, yy) = (x.r('v'), x.r('x'), x.r('y'));
    let new_z = if xx != zh { xx } else { yy };
    x.reassign(l, &[('v', w), ('w', v), ('x', z), ('y', zh), ('z', new_z)])?;
    hand_off(x)
}

/// `w y` is colored 3 and `y` misses 0.
fn case2a(x: &mut Ext<'_>) -> Flow {
    let l = "L4.C2a";
    let (t, v, xx) = (x.r('t'), x.r('v'), x.r('x'));
    let mut plain = vec![(t, 0, 2), (v, 0, 2), (xx, 0, 2), (xx, 1, 2), (xx, 1, 3)];
    plain.extend(x.moves("y", &[(0, 2), (1, 2)]));
    terminal(x, l, &plain, &[(0, 1), (0, 2), (1, 2)], 4)
}

fn c2b_target(v: &View<'_, '_>) -> bool {
    c2_target(v, v.r('z'))
        && col(v, 'v', 'x') == Some(1)
        && col(v, 'v', 'y') == Some(2)
        && v.pc(v.r('v')) == Some(0)
        && v.misses(v.r('x'), 0)
        && v.misses(v.r('y'), 3)
}

/// `w z` is colored 3 and `z` misses 0.
fn case2b(x: &mut Ext<'_>) -> Flow {
    let l = "L4.C2b";
    let goal = |v: &View<'_, '_>| {
        if !c2_target(v, v.r('z')) {
            Goal::Exit
        } else if col(v, 'v', 'x') == Some(1) || col(v, 'v', 'y') == Some(1) {
            Goal::Reached
        } else {
            Goal::Pending
        }
    };
    let plain = [
        x.moves("xy", &ALL_PAIRS[..5]),
        x.moves("u", &[(0, 3), (1, 3)]),
    ]
    .concat();
    x.search(
        l,
        &Search {
            plain: &plain,
            outside: &[],
            local: true,
            goal: &goal,
            max_depth: 8,
            max_states: SEARCH_STATES,
        },
    )?;
    if col(&x.view(), 'v', 'y') == Some(1) {
        x.swap_roles(l, 'x', 'y')?;
    }
    let goal = |v: &View<'_, '_>| {
        if !c2_target(v, v.r('z')) {
            Goal::Exit
        } else if c2b_target(v) {
            Goal::Reached
        } else {
            Goal::Pending
        }
    };
    let plain = x.moves("xy", &ALL_PAIRS[..5]);
    x.search(
        l,
        &Search {
            plain: &plain,
            outside: &[(0, 1)],
            local: true,
            goal: &goal,
            max_depth: 8,
            max_states: SEARCH_STATES,
        },
    )?;
    terminal(x, "L4.C2b.end", &[], &[(1, 2)], 2)
}
