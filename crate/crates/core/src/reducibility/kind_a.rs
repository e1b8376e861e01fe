//! Kind A: roles `v z w x y`, designated edge `vz`.
//!
//! After entry `z` sees 0 and 1 and `v` sees 0, 2 and 3; the three cases
//! split on which edge at `v` carries color 0.

use super::engine::{flip, End, Ext, Flow, Outside, View};
use crate::coloring::{Color, ColorSet, EdgeColoring};
use crate::graph::{Edge, Vertex};

type Plan = Vec<(Edge, Option<Color>)>;

struct R {
    v: Vertex,
    z: Vertex,
    w: Vertex,
    x: Vertex,
    y: Vertex,
}

fn roles(x: &Ext<'_>) -> R {
    R {
        v: x.r('v'),
        z: x.r('z'),
        w: x.r('w'),
        x: x.r('x'),
        y: x.r('y'),
    }
}

fn ed(a: Vertex, b: Vertex) -> Edge {
    Edge::new(a, b)
}

pub(super) fn run(x: &mut Ext<'_>) -> Flow {
    x.enter("L2")?;
    let r = roles(x);
    let vw = x.view();
    if vw.pc(r.v) == Some(0) {
        case1(x, &r)
    } else if vw.col(r.v, r.x) == Some(0) {
        case2(x, &r)
    } else {
        case3(x, &r)
    }
}

/// Colors for the five configuration edges when `vv'`, `ww'`, `xx'` carry
/// three distinct colors and the fourth color is on no pendant edge at `y`
/// or `z`.
fn observation(view: &View<'_, '_>, r: &R) -> Option<Plan> {
    let (a, b, c) = (view.pc(r.v)?, view.pc(r.w)?, view.pc(r.x)?);
    let abc: ColorSet = [a, b, c].into_iter().collect();
    if abc.len() != 3 {
        return None;
    }
    let d = ColorSet::full(4).difference(abc).first()?;
    if view.pendant_colors(r.y).contains(d) || view.pendant_colors(r.z).contains(d) {
        return None;
    }
    Some(vec![
        (ed(r.v, r.z), Some(d)),
        (ed(r.w, r.y), Some(d)),
        (ed(r.v, r.w), Some(c)),
        (ed(r.w, r.x), Some(a)),
        (ed(r.v, r.x), Some(b)),
    ])
}

/// Flips the `(i,j)`-chain at `s` outside the configuration and finishes by
/// the observation, if that applies afterwards.
fn flip_observe(
    x: &mut Ext<'_>,
    label: &str,
    r: &R,
    s: Vertex,
    i: Color,
    j: Color,
) -> Result<bool, super::engine::Stop> {
    let chain = x.view().chain(s, i, j, Outside::Config);
    let mut next: EdgeColoring<'_> = x.c.clone();
    flip(&mut next, &chain.edges, i, j);
    let plan = observation(
        &View {
            g: x.g,
            m: &x.m,
            c: &next,
        },
        r,
    );
    match plan {
        Some(plan) => {
            x.outside_then(label, s, i, j, &plan)?;
            x.fall(label).map(|_| false)
        }
        None => Ok(false),
    }
}

fn case1(x: &mut Ext<'_>, r: &R) -> Flow {
    let l = "L2.C1";
    if x.view().col(r.v, r.w) == Some(3) {
        x.swap_23(l);
    }
    let v = x.view();
    x.expect(v.col(r.v, r.w) == Some(2) && v.col(r.v, r.x) == Some(3), l)?;
    if v.col(r.w, r.x) == Some(0) {
        x.swap(l, r.x, 1, 2)?;
        return x.fall(l);
    }
    let v = x.view();
    x.expect(v.col(r.w, r.x) == Some(1) && v.pc(r.x) == Some(2), l)?;
    if v.col(r.w, r.y) == Some(0) {
        let l = "L2.C1.wy0";
        if v.misses(r.y, 1) {
            x.swap(l, r.y, 0, 1)?;
            return x.fall(l);
        }
        let c = v.missing(r.y).iter().find(|&c| c == 2 || c == 3);
        let Some(c) = c else { return x.fall(l) };
        x.swap(l, r.y, 1, c)?;
        x.swap(l, r.y, 0, 1)?;
        return x.fall(l);
    }
    let l = "L2.C1.wy3";
    x.expect(v.col(r.w, r.y) == Some(3) && v.sees(r.y, 1), l)?;
    if v.misses(r.y, 2) {
        x.swap(l, r.y, 1, 2)?;
        return x.fall(l);
    }
    x.expect(v.misses(r.y, 0), l)?;
    let p = v.chain(r.y, 0, 1, Outside::Nothing);
    let vv = v.pendants(r.v)[0];
    if !p.contains_edge(ed(r.w, r.x)) && p.contains_edge(vv) {
        x.swap_then(
            l,
            r.y,
            0,
            1,
            Outside::Nothing,
            &[(ed(r.v, r.x), Some(0)), (ed(r.v, r.z), Some(3))],
        )?;
        return x.fall(l);
    }
    x.swap(l, r.y, 0, 1)?;
    x.fall(l)
}

fn case2(x: &mut Ext<'_>, r: &R) -> Flow {
    let l = "L2.C2";
    if x.view().pc(r.v) == Some(3) {
        x.swap_23(l);
    }
    let v = x.view();
    x.expect(v.pc(r.v) == Some(2) && v.col(r.v, r.w) == Some(3), l)?;
    let frame = |x: &Ext<'_>| {
        let v = x.view();
        v.col(r.v, r.x) == Some(0) && v.pc(r.v) == Some(2) && v.col(r.v, r.w) == Some(3)
    };
    if v.col(r.w, r.x) == Some(1) {
        x.expect(v.pc(r.x) == Some(3), l)?;
        x.swap(l, r.x, 1, 2)?;
    }
    if !(frame(x) && x.view().col(r.w, r.x) == Some(2)) {
        return x.redispatch(l);
    }
    if x.view().pc(r.x) == Some(1) {
        x.swap(l, r.x, 1, 3)?;
    }
    if !(frame(x) && x.view().col(r.w, r.x) == Some(2) && x.view().pc(r.x) == Some(3)) {
        return x.redispatch(l);
    }
    if x.view().col(r.w, r.y) != Some(1) {
        x.swap(l, r.w, 0, 1)?;
    }
    let v = x.view();
    if !(frame(x)
        && v.col(r.w, r.x) == Some(2)
        && v.pc(r.x) == Some(3)
        && v.col(r.w, r.y) == Some(1))
    {
        return x.redispatch(l);
    }
    x.expect(v.sees(r.y, 3), l)?;
    if v.misses(r.y, 2) {
        x.swap(l, r.x, 1, 3)?;
        x.swap(l, r.y, 1, 2)?;
        return x.fall(l);
    }
    x.swap(l, r.y, 0, 1)?;
    if x.view().misses(r.x, 1) {
        x.swap(l, r.x, 1, 3)?;
    }
    if x.view().misses(r.y, 1) {
        x.swap(l, r.y, 1, 3)?;
    }
    if !c2_target(&x.view(), r) {
        return x.redispatch(l);
    }

    let l = "L2.C2.3a";
    for s in [r.w, r.x] {
        if x.view().end(s, 0, 1, Outside::Config) == End::Infinity {
            flip_observe(x, l, r, s, 0, 1)?;
        }
    }
    x.expect(x.view().end(r.y, 0, 1, Outside::Config) == End::Infinity, l)?;
    x.outside_then(
        l,
        r.y,
        0,
        1,
        &[
            (ed(r.v, r.x), Some(3)),
            (ed(r.w, r.y), Some(3)),
            (ed(r.v, r.w), Some(0)),
        ],
    )?;

    let l = "L2.C2.3b";
    let end = x.view().end(r.w, 1, 2, Outside::Config);
    let to_wx0 = [(ed(r.w, r.x), Some(0)), (ed(r.v, r.w), Some(1))];
    match end {
        End::Role(t) if t == r.x || t == r.v => {
            let vx = if t == r.x { 1 } else { 2 };
            x.outside_then(
                l,
                r.w,
                1,
                2,
                &[
                    (ed(r.w, r.y), Some(1)),
                    (ed(r.w, r.x), Some(3)),
                    (ed(r.v, r.x), Some(vx)),
                    (ed(r.v, r.z), Some(3)),
                ],
            )?;
            x.fall(l)
        }
        End::Role(t) if t == r.y => {
            x.outside_then(l, r.w, 1, 2, &to_wx0)?;
            let q = x.view().end(r.w, 0, 2, Outside::Config);
            if q != End::Role(r.v) {
                flip_observe(x, l, r, r.w, 0, 2)?;
                return x.fall(l);
            }
            x.outside_then(l, r.z, 0, 2, &[(ed(r.v, r.z), Some(0))])?;
            x.fall(l)
        }
        End::Role(t) if t == r.z => {
            x.outside_then(l, r.w, 1, 2, &to_wx0)?;
            let v = x.view();
            if v.end(r.z, 0, 1, Outside::Config) == End::Infinity {
                x.outside_then(l, r.z, 0, 1, &[(ed(r.v, r.z), Some(0))])?;
            } else if v.end(r.x, 0, 1, Outside::Config) == End::Infinity {
                x.outside_then(
                    l,
                    r.x,
                    0,
                    1,
                    &[
                        (ed(r.w, r.x), Some(1)),
                        (ed(r.v, r.w), Some(0)),
                        (ed(r.v, r.z), Some(1)),
                    ],
                )?;
            } else if v.end(r.y, 0, 1, Outside::Config) == End::Infinity {
                x.outside_then(
                    l,
                    r.y,
                    0,
                    1,
                    &[
                        (ed(r.w, r.y), Some(0)),
                        (ed(r.w, r.x), Some(3)),
                        (ed(r.v, r.x), Some(0)),
                        (ed(r.v, r.z), Some(3)),
                    ],
                )?;
            }
            x.fall(l)
        }
        End::Infinity => {
            x.outside_then(l, r.w, 1, 2, &to_wx0)?;
            for s in [r.v, r.w] {
                if x.view().end(s, 0, 2, Outside::Config) == End::Infinity {
                    flip_observe(x, l, r, s, 0, 2)?;
                }
            }
            if x.view().end(r.z, 0, 2, Outside::Config) == End::Infinity {
                x.outside_then(l, r.z, 0, 2, &[(ed(r.v, r.z), Some(0))])?;
            }
            x.fall(l)
        }
        _ => x.fall(l),
    }
}

fn c2_target(v: &View<'_, '_>, r: &R) -> bool {
    v.col(r.v, r.x) == Some(0)
        && v.col(r.w, r.x) == Some(2)
        && v.col(r.v, r.w) == Some(3)
        && v.col(r.w, r.y) == Some(0)
        && v.pc(r.v) == Some(2)
        && v.pc(r.w) == Some(1)
        && v.pc(r.x) == Some(1)
        && v.pendant_colors(r.y) == [1, 2].into_iter().collect()
}

fn case3(x: &mut Ext<'_>, r: &R) -> Flow {
    let l = "L2.C3";
    x.expect(x.view().col(r.v, r.w) == Some(0), l)?;
    if x.view().pc(r.v) == Some(3) {
        x.swap_23(l);
    }
    let v = x.view();
    x.expect(v.pc(r.v) == Some(2) && v.col(r.v, r.x) == Some(3), l)?;
    if v.col(r.w, r.y) == Some(3) {
        let l = "L2.C3.wy3";
        if v.misses(r.y, 0) {
            if v.sees(r.x, 0) {
                x.swap(l, r.x, 0, 2)?;
            }
            x.swap(l, r.x, 0, 3)?;
            return x.redispatch(l);
        }
        if v.misses(r.y, 2) {
            x.swap(l, r.y, 1, 2)?;
        }
        let v = x.view();
        x.expect(
            v.col(r.v, r.w) == Some(0)
                && v.col(r.w, r.y) == Some(3)
                && v.col(r.w, r.x) == Some(2)
                && v.pc(r.w) == Some(1)
                && v.pc(r.x) == Some(1),
            l,
        )?;
        if v.chain(r.x, 0, 1, Outside::Nothing)
            .contains_edge(ed(r.v, r.w))
        {
            x.swap(l, r.y, 0, 1)?;
        } else {
            x.swap(l, r.x, 0, 1)?;
        }
        return x.redispatch(l);
    }
    let l = "L2.C3.ww3";
    x.expect(v.pc(r.w) == Some(3), l)?;
    if v.col(r.w, r.x) == Some(2) {
        x.expect(v.col(r.w, r.y) == Some(1) && v.pc(r.x) == Some(1), l)?;
        if v.misses(r.y, 3) {
            x.swap(l, r.y, 1, 3)?;
            return x.redispatch(l);
        }
        if !v.linked(r.v, r.z, 0, 2) {
            x.swap(l, r.x, 0, 2)?;
            return x.redispatch(l);
        }
        if v.misses(r.y, 2) {
            x.swap(l, r.y, 0, 2)?;
        }
        x.swap(l, r.y, 0, 3)?;
        return x.redispatch(l);
    }
    x.expect(v.col(r.w, r.x) == Some(1) && v.col(r.w, r.y) == Some(2), l)?;
    if v.pc(r.x) != Some(2) {
        x.swap(l, r.x, 1, 2)?;
        return x.fall(l);
    }
    if v.misses(r.y, 0) {
        if !v.linked(r.y, r.z, 0, 2) {
            x.swap(l, r.y, 0, 2)?;
            return x.redispatch(l);
        }
        x.swap(l, r.x, 0, 2)?;
        x.swap(l, r.x, 1, 2)?;
        return x.fall(l);
    }
    if v.sees(r.y, 1) {
        x.swap(l, r.y, 1, 3)?;
    }
    x.swap(l, r.y, 1, 2)?;
    x.redispatch(l)
}
