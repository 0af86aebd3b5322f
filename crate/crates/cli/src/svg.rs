use std::fmt::Write;

use mindisp::bounds::RegionRow;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 600.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 530.0;

fn color(name: &str) -> &'static str {
    match name {
        "main" => "#1f77b4",
        "elementary" => "#7f7f7f",
        "dumitrescu" => "#2ca02c",
        "ahr" => "#d62728",
        "bukh-chao" => "#9467bd",
        "large-eps" => "#8c564b",
        _ => "#000000",
    }
}

/// Integer decades in `[lo, hi]`, thinned to at most about ten.
fn decades(lo: f64, hi: f64) -> Vec<i32> {
    let (a, b) = (lo.ceil() as i32, hi.floor() as i32);
    let step = ((b - a) / 10 + 1).max(1);
    (a..=b).filter(|e| (e - a) % step == 0).collect()
}

/// Log-log step chart of the winning lower bound against eps, one polyline
/// per winning bound.
pub fn region_chart(d: usize, rows: &[RegionRow]) -> String {
    let shown: Vec<&RegionRow> = rows.iter().filter(|r| r.value > 0.0).collect();
    let (x0, x1) = (rows[0].eps.log10(), rows[rows.len() - 1].eps.log10());
    let (mut y0, mut y1) = shown.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
        (lo.min(r.value.log10()), hi.max(r.value.log10()))
    });
    if shown.is_empty() {
        (y0, y1) = (0.0, 1.0);
    }
    y0 = y0.floor();
    y1 = y1.ceil().max(y0 + 1.0);
    let px = |lx: f64| LEFT + (lx - x0) / (x1 - x0) * (RIGHT - LEFT);
    let py = |ly: f64| BOTTOM - (ly - y0) / (y1 - y0) * (BOTTOM - TOP);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="25" text-anchor="middle" font-size="15">Best lower bound on N(eps, d), d = {d}</text>"#,
        (LEFT + RIGHT) / 2.0
    );
    let _ = writeln!(
        out,
        r#"<rect x="{LEFT}" y="{TOP}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        RIGHT - LEFT,
        BOTTOM - TOP
    );
    for e in decades(x0, x1) {
        let x = px(e as f64);
        let _ = writeln!(
            out,
            r##"<line x1="{x:.2}" y1="{TOP}" x2="{x:.2}" y2="{BOTTOM}" stroke="#dddddd"/>"##
        );
        let _ = writeln!(
            out,
            r#"<text x="{x:.2}" y="{}" text-anchor="middle">1e{e}</text>"#,
            BOTTOM + 18.0
        );
    }
    for e in decades(y0, y1) {
        let y = py(e as f64);
        let _ = writeln!(
            out,
            r##"<line x1="{LEFT}" y1="{y:.2}" x2="{RIGHT}" y2="{y:.2}" stroke="#dddddd"/>"##
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{:.2}" text-anchor="end">1e{e}</text>"#,
            LEFT - 6.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{}" text-anchor="middle">eps</text>"#,
        (LEFT + RIGHT) / 2.0,
        BOTTOM + 40.0
    );
    let _ = writeln!(
        out,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">lower bound</text>"#,
        (TOP + BOTTOM) / 2.0,
        (TOP + BOTTOM) / 2.0
    );

    // each row owns the log-x interval between the midpoints to its neighbours
    let logs: Vec<f64> = rows.iter().map(|r| r.eps.log10()).collect();
    let edge = |i: usize| -> (f64, f64) {
        let left = if i == 0 { logs[0] } else { (logs[i - 1] + logs[i]) / 2.0 };
        let right = if i + 1 == logs.len() {
            logs[i]
        } else {
            (logs[i] + logs[i + 1]) / 2.0
        };
        (left, right)
    };
    let mut names: Vec<&str> = vec![];
    for r in &shown {
        if !names.contains(&r.winner.as_str()) {
            names.push(&r.winner);
        }
    }
    for name in &names {
        let mut points = String::new();
        for (i, r) in rows.iter().enumerate() {
            if r.winner != *name || r.value <= 0.0 {
                continue;
            }
            let (a, b) = edge(i);
            let y = py(r.value.log10());
            let _ = write!(points, "{:.2},{y:.2} {:.2},{y:.2} ", px(a), px(b));
        }
        let _ = writeln!(
            out,
            r#"<polyline data-bound="{name}" fill="none" stroke="{}" stroke-width="2" points="{}"/>"#,
            color(name),
            points.trim_end()
        );
    }

    for (i, name) in names.iter().enumerate() {
        let y = TOP + 10.0 + 22.0 * i as f64;
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{y:.2}" x2="{}" y2="{y:.2}" stroke="{}" stroke-width="3"/>"#,
            RIGHT + 20.0,
            RIGHT + 50.0,
            color(name)
        );
        let _ = writeln!(out, r#"<text x="{}" y="{:.2}">{name}</text>"#, RIGHT + 58.0, y + 4.0);
    }
    out.push_str("</svg>\n");
    out
}
