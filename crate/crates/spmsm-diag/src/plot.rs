//! Minimal SVG line charts for plot output. Data exports stay CSV; these
//! charts are a convenience for eyeballing a run without external tooling.

/// One labelled series of (x, y) points.
pub struct Series<'a> {
    pub label: &'a str,
    pub points: &'a [(f64, f64)],
}

const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];
const WIDTH: f64 = 900.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 56.0;

/// Render series as an SVG polyline chart with axis labels.
pub fn line_chart(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for s in series {
        for &(x, y) in s.points {
            x_min = x_min.min(x);
            x_max = x_max.max(x);
            y_min = y_min.min(y);
            y_max = y_max.max(y);
        }
    }
    if !x_min.is_finite() || x_max <= x_min {
        x_min = 0.0;
        x_max = 1.0;
    }
    if !y_min.is_finite() || y_max <= y_min {
        y_min -= 0.5;
        y_max = y_min + 1.0;
    }
    let pad = 0.04 * (y_max - y_min);
    let (y_min, y_max) = (y_min - pad, y_max + pad);

    let to_x = |x: f64| MARGIN + (x - x_min) / (x_max - x_min) * (WIDTH - 2.0 * MARGIN);
    let to_y = |y: f64| HEIGHT - MARGIN - (y - y_min) / (y_max - y_min) * (HEIGHT - 2.0 * MARGIN);

    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n\
         <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n\
         <text x=\"{tx}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"16\">{title}</text>\n",
        tx = WIDTH / 2.0,
    );
    // Axes
    svg.push_str(&format!(
        "<line x1=\"{m}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"#333\"/>\n\
         <line x1=\"{m}\" y1=\"{t}\" x2=\"{m}\" y2=\"{b}\" stroke=\"#333\"/>\n\
         <text x=\"{cx}\" y=\"{ly}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"12\">{x_label}</text>\n\
         <text x=\"16\" y=\"{cy}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"12\" transform=\"rotate(-90 16 {cy})\">{y_label}</text>\n",
        m = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN,
        t = MARGIN,
        cx = WIDTH / 2.0,
        ly = HEIGHT - 16.0,
        cy = HEIGHT / 2.0,
    ));
    // Range labels
    svg.push_str(&format!(
        "<text x=\"{m}\" y=\"{by}\" font-family=\"sans-serif\" font-size=\"10\">{x_min:.4}</text>\n\
         <text x=\"{r}\" y=\"{by}\" text-anchor=\"end\" font-family=\"sans-serif\" \
         font-size=\"10\">{x_max:.4}</text>\n\
         <text x=\"{lx}\" y=\"{b}\" text-anchor=\"end\" font-family=\"sans-serif\" \
         font-size=\"10\">{y_min:.3}</text>\n\
         <text x=\"{lx}\" y=\"{t}\" text-anchor=\"end\" font-family=\"sans-serif\" \
         font-size=\"10\">{y_max:.3}</text>\n",
        m = MARGIN,
        by = HEIGHT - MARGIN + 14.0,
        r = WIDTH - MARGIN,
        lx = MARGIN - 6.0,
        b = HEIGHT - MARGIN,
        t = MARGIN + 4.0,
    ));

    for (i, s) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let mut path = String::new();
        for &(x, y) in s.points {
            path.push_str(&format!("{:.2},{:.2} ", to_x(x), to_y(y)));
        }
        svg.push_str(&format!(
            "<polyline points=\"{path}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1\"/>\n\
             <text x=\"{lx}\" y=\"{ly}\" font-family=\"sans-serif\" font-size=\"11\" \
             fill=\"{color}\">{label}</text>\n",
            lx = WIDTH - MARGIN - 140.0,
            ly = MARGIN + 16.0 + 14.0 * i as f64,
            label = s.label,
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_contains_series_and_labels() {
        let points: Vec<(f64, f64)> = (0..10).map(|i| (i as f64, (i * i) as f64)).collect();
        let svg = line_chart(
            "test",
            "x",
            "y",
            &[Series {
                label: "series-a",
                points: &points,
            }],
        );
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("polyline"));
        assert!(svg.contains("series-a"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn degenerate_input_still_renders() {
        let svg = line_chart("empty", "x", "y", &[]);
        assert!(svg.starts_with("<svg"));
    }
}
