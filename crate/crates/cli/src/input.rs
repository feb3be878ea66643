use std::fs;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;

use nilflat::catalog::{lookup, CatalogEntry};
use nilflat::constructions::generate;
use nilflat::exactmath::parse_rational;
use nilflat::involution::Involution;
use nilflat::liealg::{
    has_pm, normalize_param_name, parse_structure, parse_structure_variant, LieAlgebra, Params,
    PmChoice,
};

#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Structure constants, e.g. "(0,0,e^{12},e^{13})"
    pub structure: Option<String>,
    /// Read the structure constants from a file
    #[arg(long, value_name = "PATH")]
    pub file: Option<PathBuf>,
    /// Generator spec: heisenberg:3, filiform:6, graph:path5, parabolic:C:4, ...
    #[arg(long = "gen", value_name = "SPEC")]
    pub generator: Option<String>,
    /// Catalog entry name, e.g. 64321:5 or 6431:2b
    #[arg(long, value_name = "NAME")]
    pub catalog: Option<String>,
    /// Parameter values, e.g. λ=1/2 (repeatable or comma separated)
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,
    /// Sign for ± in the structure
    #[arg(long, value_parser = ["plus", "minus"])]
    pub pm: Option<String>,
}

/// A resolved input: the algebra plus whatever involutions came with it.
pub struct Loaded {
    pub algebra: LieAlgebra,
    pub sigmas: Vec<Involution>,
    pub entry: Option<&'static CatalogEntry>,
}

fn parse_params(items: &[String]) -> Result<Params> {
    let mut out = Params::new();
    for item in items
        .iter()
        .flat_map(|s| s.split(','))
        .filter(|s| !s.trim().is_empty())
    {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| anyhow!("parameter `{item}` is not of the form name=value"))?;
        let v = parse_rational(v.trim())
            .ok_or_else(|| anyhow!("bad parameter value `{}`", v.trim()))?;
        out.insert(normalize_param_name(k.trim()), v);
    }
    Ok(out)
}

fn from_text(text: &str, params: &Params, pm: Option<&str>) -> Result<LieAlgebra> {
    let text = text.trim();
    if has_pm(text) {
        let choice = match pm {
            Some("minus") => PmChoice::Minus,
            Some(_) => PmChoice::Plus,
            None => bail!("the structure contains ±; choose a sign with --pm plus|minus"),
        };
        Ok(parse_structure_variant(text, params, choice)?)
    } else {
        Ok(parse_structure(text, params)?)
    }
}

impl Source {
    pub fn load(&self) -> Result<Loaded> {
        let given = [
            self.structure.is_some(),
            self.file.is_some(),
            self.generator.is_some(),
            self.catalog.is_some(),
        ];
        match given.iter().filter(|&&g| g).count() {
            0 => bail!("no input: give a structure, --file, --gen or --catalog"),
            1 => {}
            _ => bail!("give exactly one of: a structure, --file, --gen, --catalog"),
        }
        let params = parse_params(&self.params)?;
        if let Some(text) = &self.structure {
            return Ok(Loaded {
                algebra: from_text(text, &params, self.pm.as_deref())?,
                sigmas: Vec::new(),
                entry: None,
            });
        }
        if let Some(path) = &self.file {
            let raw =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let text: String = raw
                .lines()
                .filter(|l| !l.trim_start().starts_with('#'))
                .collect::<Vec<_>>()
                .join("");
            return Ok(Loaded {
                algebra: from_text(&text, &params, self.pm.as_deref())?,
                sigmas: Vec::new(),
                entry: None,
            });
        }
        if let Some(spec) = &self.generator {
            let g = generate(spec)?;
            return Ok(Loaded {
                algebra: g.algebra,
                sigmas: g.sigmas,
                entry: None,
            });
        }
        let name = self.catalog.as_deref().unwrap_or_default();
        let entry = lookup(name)?;
        let mut entry_params = params;
        if let Some((p, values)) = &entry.param {
            entry_params
                .entry(p.clone())
                .or_insert_with(|| values[0].clone());
        }
        let algebra =
            nilflat::liealg::parse_structure_unchecked(&entry.structure, &entry_params, entry.pm)?;
        if let Some(w) = nilflat::liealg::check_jacobi(&algebra) {
            bail!(
                "catalog structure fails the Jacobi identity at (e{}, e{}, e{})",
                w.i + 1,
                w.j + 1,
                w.k + 1
            );
        }
        Ok(Loaded {
            algebra: algebra.with_name(entry.name.clone()),
            sigmas: entry.sigmas.iter().map(|s| s.sigma.clone()).collect(),
            entry: Some(entry),
        })
    }
}

impl Loaded {
    /// The involution from --sigma, else the first one shipped with the input.
    pub fn sigma(&self, flag: Option<&str>) -> Result<Involution> {
        match flag {
            Some(text) => Ok(Involution::parse(text, self.algebra.dim())?),
            None => self
                .sigmas
                .first()
                .cloned()
                .ok_or_else(|| anyhow!("no involution: pass --sigma \"(a b)(c d)\"")),
        }
    }
}
