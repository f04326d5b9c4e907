//! Hand-emitted SVG chart for bound curves.

use std::fmt::Write as _;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 60.0;
const TICKS: usize = 5;

/// Renders the three bound curves (optimized lower, interpolated lower,
/// upper) against the ellipticity ratio in a fixed 800×600 view box.
/// Exactly three `<polyline>` elements; axes and ticks use `<line>`.
pub fn curve_chart(rows: &[[f64; 6]]) -> String {
    let x_lo = rows.first().map(|r| r[0]).unwrap_or(0.0);
    let x_hi = rows.last().map(|r| r[0]).unwrap_or(1.0);
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let px = |tau: f64| MARGIN_LEFT + (tau - x_lo) / (x_hi - x_lo) * plot_w;
    let py = |v: f64| MARGIN_TOP + (1.0 - v) * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" width=\"{WIDTH}\" height=\"{HEIGHT}\">"
    );
    let _ = writeln!(s, "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>");

    // axes
    let x0 = MARGIN_LEFT;
    let y0 = HEIGHT - MARGIN_BOTTOM;
    let _ = writeln!(
        s,
        "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{}\" y2=\"{y0}\" stroke=\"black\"/>",
        WIDTH - MARGIN_RIGHT
    );
    let _ = writeln!(
        s,
        "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"{MARGIN_TOP}\" stroke=\"black\"/>"
    );

    // ticks and labels
    for k in 0..=TICKS {
        let t = k as f64 / TICKS as f64;
        let tau = x_lo + t * (x_hi - x_lo);
        let x = px(tau);
        let _ = writeln!(
            s,
            "<line x1=\"{x}\" y1=\"{y0}\" x2=\"{x}\" y2=\"{}\" stroke=\"black\"/>",
            y0 + 6.0
        );
        let _ = writeln!(
            s,
            "<text x=\"{x}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">{tau:.2}</text>",
            y0 + 20.0
        );
        let v = t;
        let y = py(v);
        let _ = writeln!(
            s,
            "<line x1=\"{}\" y1=\"{y}\" x2=\"{x0}\" y2=\"{y}\" stroke=\"black\"/>",
            x0 - 6.0
        );
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"end\">{v:.1}</text>",
            x0 - 10.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" font-size=\"14\" text-anchor=\"middle\">ellipticity ratio</text>",
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        s,
        "<text x=\"18\" y=\"{}\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 {})\">exponent bound</text>",
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0
    );

    // curves: column index and stroke per series
    let series: [(usize, &str, &str); 3] = [
        (2, "#d62728", "optimized lower"),
        (3, "#1f77b4", "interpolated lower"),
        (4, "#2ca02c", "upper"),
    ];
    for (col, color, _) in series {
        let mut points = String::new();
        for row in rows {
            let _ = write!(points, "{:.2},{:.2} ", px(row[0]), py(row[col]));
        }
        let _ = writeln!(
            s,
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>",
            points.trim_end()
        );
    }

    // legend
    for (k, (_, color, label)) in series.iter().enumerate() {
        let y = MARGIN_TOP + 16.0 + 18.0 * k as f64;
        let _ = writeln!(
            s,
            "<line x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"{color}\" stroke-width=\"2\"/>",
            MARGIN_LEFT + 12.0,
            MARGIN_LEFT + 40.0
        );
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" font-size=\"12\">{label}</text>",
            MARGIN_LEFT + 46.0,
            y + 4.0
        );
    }
    s.push_str("</svg>\n");
    s
}
