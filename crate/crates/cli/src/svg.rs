//! Self-contained SVG log-log scatter plot writer. No plotting
//! dependency: output is a deterministic string, byte-for-byte stable
//! for fixed inputs, so it can be golden-file tested.

/// One plotted series: positive (k, value) points only.
pub struct Series {
    pub name: String,
    pub color: &'static str,
    pub points: Vec<(f64, f64)>,
}

pub const WIDTH: u32 = 720;
pub const HEIGHT: u32 = 540;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 55.0;

fn fmt(v: f64) -> String {
    format!("{v:.2}")
}

struct LogAxis {
    lo: f64, // log10 of the data minimum
    hi: f64,
    pix_lo: f64,
    pix_hi: f64,
}

impl LogAxis {
    fn map(&self, value: f64) -> f64 {
        let t = (value.log10() - self.lo) / (self.hi - self.lo);
        self.pix_lo + t * (self.pix_hi - self.pix_lo)
    }

    fn decades(&self) -> Vec<i32> {
        (self.lo.ceil() as i32..=self.hi.floor() as i32).collect()
    }
}

/// Render a log-log plot of the series plus a `k^-3` guide line anchored
/// at the first point of the first series.
pub fn log_log_plot(title: &str, series: &[Series]) -> String {
    let pts: Vec<(f64, f64)> = series
        .iter()
        .flat_map(|s| s.points.iter().copied())
        .filter(|&(x, y)| x > 0.0 && y > 0.0)
        .collect();
    let (x_min, x_max) = pts
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(x, _)| {
            (lo.min(x), hi.max(x))
        });
    let (y_min, y_max) = pts
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(_, y)| {
            (lo.min(y), hi.max(y))
        });
    // Degenerate inputs still produce a valid document.
    let (x_min, x_max) = if pts.is_empty() { (1.0, 10.0) } else { (x_min, x_max) };
    let (y_min, y_max) = if pts.is_empty() { (1e-3, 1.0) } else { (y_min, y_max) };
    let pad = 0.05;
    let xa = LogAxis {
        lo: x_min.log10() - pad,
        hi: x_max.log10() + pad,
        pix_lo: MARGIN_L,
        pix_hi: WIDTH as f64 - MARGIN_R,
    };
    let ya = LogAxis {
        lo: y_min.log10() - pad,
        hi: y_max.log10() + pad,
        pix_lo: HEIGHT as f64 - MARGIN_B,
        pix_hi: MARGIN_T,
    };

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    out.push_str(&format!(
        "<text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">{}</text>\n",
        WIDTH / 2,
        escape(title)
    ));

    // Frame.
    out.push_str(&format!(
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
        fmt(MARGIN_L),
        fmt(MARGIN_T),
        fmt(WIDTH as f64 - MARGIN_L - MARGIN_R),
        fmt(HEIGHT as f64 - MARGIN_T - MARGIN_B)
    ));

    // Decade ticks and gridlines.
    for e in xa.decades() {
        let x = xa.map(10f64.powi(e));
        out.push_str(&format!(
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#cccccc\" stroke-dasharray=\"2,3\"/>\n",
            fmt(x),
            fmt(MARGIN_T),
            fmt(HEIGHT as f64 - MARGIN_B)
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">1e{}</text>\n",
            fmt(x),
            fmt(HEIGHT as f64 - MARGIN_B + 18.0),
            e
        ));
    }
    for e in ya.decades() {
        let y = ya.map(10f64.powi(e));
        out.push_str(&format!(
            "<line x1=\"{1}\" y1=\"{0}\" x2=\"{2}\" y2=\"{0}\" stroke=\"#cccccc\" stroke-dasharray=\"2,3\"/>\n",
            fmt(y),
            fmt(MARGIN_L),
            fmt(WIDTH as f64 - MARGIN_R)
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">1e{}</text>\n",
            fmt(MARGIN_L - 6.0),
            fmt(y + 4.0),
            e
        ));
    }

    // Axis labels.
    out.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">degree k</text>\n",
        WIDTH / 2,
        HEIGHT - 12
    ));
    out.push_str(&format!(
        "<text x=\"18\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 {})\">P(k)</text>\n",
        HEIGHT / 2,
        HEIGHT / 2
    ));

    // Slope -3 guide through the first point of the first series.
    if let Some((x0, y0)) = series
        .iter()
        .flat_map(|s| s.points.iter().copied())
        .find(|&(x, y)| x > 0.0 && y > 0.0)
    {
        let x1 = x_max;
        let y1 = y0 * (x1 / x0).powi(-3);
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n",
            fmt(xa.map(x0)),
            fmt(ya.map(y0)),
            fmt(xa.map(x1)),
            fmt(ya.map(y1))
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#888888\">slope -3</text>\n",
            fmt(xa.map(x1) - 70.0),
            fmt(ya.map(y1) - 6.0)
        ));
    }

    // Data points.
    for s in series {
        for &(x, y) in &s.points {
            if x <= 0.0 || y <= 0.0 {
                continue;
            }
            out.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"none\" stroke=\"{}\"/>\n",
                fmt(xa.map(x)),
                fmt(ya.map(y)),
                s.color
            ));
        }
    }

    // Legend.
    for (i, s) in series.iter().enumerate() {
        let y = MARGIN_T + 16.0 + 18.0 * i as f64;
        let x = WIDTH as f64 - MARGIN_R - 180.0;
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"none\" stroke=\"{}\"/>\n",
            fmt(x),
            fmt(y - 4.0),
            s.color
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
            fmt(x + 10.0),
            fmt(y),
            escape(&s.name)
        ));
    }

    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_output() {
        let series = vec![Series {
            name: "theory".into(),
            color: "#1f77b4",
            points: (1..=50).map(|k| (k as f64, (k as f64).powi(-3))).collect(),
        }];
        let a = log_log_plot("test", &series);
        let b = log_log_plot("test", &series);
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.ends_with("</svg>\n"));
        assert!(a.contains("slope -3"));
    }

    #[test]
    fn empty_series_still_valid() {
        let doc = log_log_plot("empty", &[]);
        assert!(doc.contains("</svg>"));
    }
}
