//! Reproducible sweep grids: `start:stop:lin|log:count`, `count >= 2`,
//! strictly increasing values.

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub values: Vec<f64>,
}

impl Grid {
    pub fn parse(spec: &str) -> Result<Self, String> {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 4 {
            return Err(format!(
                "grid must be start:stop:lin|log:count, got {spec:?}"
            ));
        }
        let start: f64 = parts[0]
            .parse()
            .map_err(|_| format!("bad grid start {:?}", parts[0]))?;
        let stop: f64 = parts[1]
            .parse()
            .map_err(|_| format!("bad grid stop {:?}", parts[1]))?;
        let count: usize = parts[3]
            .parse()
            .map_err(|_| format!("bad grid count {:?}", parts[3]))?;
        if count < 2 {
            return Err("grid count must be at least 2".into());
        }
        if !(start < stop) {
            return Err("grid start must be below stop".into());
        }
        let values = match parts[2] {
            "lin" => (0..count)
                .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
                .collect(),
            "log" => {
                if start <= 0.0 {
                    return Err("log grids need a positive start".into());
                }
                let (a, b) = (start.ln(), stop.ln());
                (0..count)
                    .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
                    .collect()
            }
            other => return Err(format!("grid spacing must be lin or log, got {other:?}")),
        };
        Ok(Self { values })
    }
}

impl std::str::FromStr for Grid {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Grid::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lin_and_log() {
        let g = Grid::parse("0:1:lin:5").unwrap();
        assert_eq!(g.values, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let g = Grid::parse("0.01:100:log:5").unwrap();
        assert_eq!(g.values.len(), 5);
        assert!((g.values[0] - 0.01).abs() < 1e-15);
        assert!((g.values[4] - 100.0).abs() < 1e-12);
        assert!((g.values[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejections() {
        assert!(Grid::parse("0:1:lin:1").is_err());
        assert!(Grid::parse("1:0:lin:4").is_err());
        assert!(Grid::parse("0:1:log:4").is_err());
        assert!(Grid::parse("0:1:cubic:4").is_err());
        assert!(Grid::parse("0:1:lin").is_err());
    }
}
