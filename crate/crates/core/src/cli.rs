//! Command-line front end. The binary is a thin wrapper around [`run`].

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra;
use crate::geography::Catalog;
use crate::isomorphism::{self, IsomorphismReport, DecisionCase};
use crate::manifolds::{self, SymplecticFourManifoldDescriptor};
use crate::report::{self, Document, FORMAT_VERSION};
use crate::selftest;
use crate::{Error, Result};

pub const DEFAULT_K_MAX: u64 = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "bwcontact", version, about = "Classify Boothby-Wang contact structures on simply-connected 5-manifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Truncation bound on k for spectra and witnesses
    #[arg(long, global = true, default_value_t = DEFAULT_K_MAX)]
    pub k_max: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Geography catalog overriding the built-in one
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a descriptor against the standing assumptions
    Validate { descriptor: PathBuf },
    /// Total space, spin type, level and canonical divisibility
    Classify { descriptor: PathBuf },
    /// Generator degrees of the contact-homology algebra and residue classes
    Spectrum { descriptor: PathBuf },
    /// Compare the contact structures induced by two descriptors
    Compare { first: PathBuf, second: PathBuf },
    /// Bounds on inequivalent contact structures on a level
    Counts {
        /// Take b2 and level from this descriptor
        descriptor: Option<PathBuf>,
        /// Second Betti number r of the base
        #[arg(long)]
        b2: Option<u32>,
        /// Level d
        #[arg(long)]
        level: Option<u64>,
    },
    /// List the geography catalog
    Catalog,
    /// Run the oracle suites
    Selftest,
}

pub fn read_descriptor(path: &Path) -> Result<SymplecticFourManifoldDescriptor> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    SymplecticFourManifoldDescriptor::from_json(&text).map_err(|source| Error::Descriptor {
        path: path.to_path_buf(),
        source,
    })
}

fn load_catalog(path: Option<&Path>) -> Result<Catalog> {
    let Some(path) = path else {
        return Ok(Catalog::builtin());
    };
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Catalog::from_json(&text).map_err(|source| Error::Catalog {
        path: path.to_path_buf(),
        source,
    })
}

/// Build the document for `cli.command`. Errors carry a stable code, see
/// [`Error::code`].
pub fn run(cli: &Cli) -> Result<Document> {
    if cli.k_max == 0 {
        return Err(Error::Usage("--k-max must be positive".into()));
    }
    let doc = match &cli.command {
        Command::Validate { descriptor } => {
            let validated = read_descriptor(descriptor)?.validate()?;
            Document::Validate(report::ValidateOutput {
                format_version: FORMAT_VERSION,
                descriptor: validated.into_inner(),
            })
        }
        Command::Classify { descriptor } => {
            let (validated, manifold) = crate::classify(read_descriptor(descriptor)?)?;
            Document::Classify(report::ClassifyOutput {
                format_version: FORMAT_VERSION,
                name: validated.name().to_string(),
                manifold,
            })
        }
        Command::Spectrum { descriptor } => {
            let (validated, manifold) = crate::classify(read_descriptor(descriptor)?)?;
            let spectrum = algebra::spectrum(&manifold, cli.k_max)?;
            let residue_table = match manifold.level {
                0 => None,
                d => Some(algebra::residue_table(d, manifold.dk)?),
            };
            Document::Spectrum(report::SpectrumOutput {
                format_version: FORMAT_VERSION,
                name: validated.name().to_string(),
                manifold,
                spectrum,
                residue_table,
            })
        }
        Command::Compare { first, second } => {
            let a = crate::classify(read_descriptor(first)?)?;
            let b = crate::classify(read_descriptor(second)?)?;
            Document::Compare(compare(a, b, cli.k_max)?)
        }
        Command::Counts { descriptor, b2, level } => {
            let (r, d) = match (descriptor, b2, level) {
                (Some(path), None, None) => {
                    let (validated, manifold) = crate::classify(read_descriptor(path)?)?;
                    (validated.b2(), manifold.level)
                }
                (None, Some(r), Some(d)) => (*r, *d),
                _ => {
                    return Err(Error::Usage(
                        "counts needs either a descriptor or both --b2 and --level".into(),
                    ))
                }
            };
            let catalog = load_catalog(cli.catalog.as_deref())?;
            Document::Counts(report::CountsOutput {
                format_version: FORMAT_VERSION,
                report: catalog.contact_count_report(r, d)?,
            })
        }
        Command::Catalog => {
            let catalog = load_catalog(cli.catalog.as_deref())?;
            Document::Catalog(report::CatalogOutput {
                format_version: FORMAT_VERSION,
                entries: catalog.entries().to_vec(),
            })
        }
        Command::Selftest => Document::Selftest(report::SelftestOutput {
            format_version: FORMAT_VERSION,
            suites: selftest::run_all(),
        }),
    };
    Ok(doc)
}

type Classified = (manifolds::ValidatedDescriptor, manifolds::FiveManifoldContact);

pub fn compare(first: Classified, second: Classified, k_max: u64) -> Result<report::ComparisonOutput> {
    let (da, x) = first;
    let (db, y) = second;
    let diffeomorphic = manifolds::diffeomorphic(&x, &y);
    let almost_contact = manifolds::almost_contact_equivalent(&x, &y);
    let contact_homology = if !diffeomorphic {
        IsomorphismReport::incomparable(DecisionCase::NotDiffeomorphic, x.dk, y.dk)
    } else if !almost_contact {
        IsomorphismReport::incomparable(DecisionCase::LevelsDiffer, x.dk, y.dk)
    } else {
        let decided = isomorphism::decide(x.level, x.dk, y.dk)?;
        if decided.is_isomorphic() {
            let s = algebra::spectrum(&x, k_max)?;
            let t = algebra::spectrum(&y, k_max)?;
            isomorphism::build_witness(&s, &t)?
        } else {
            decided
        }
    };
    let (verdict, narrative) = report::comparison_verdict(diffeomorphic, almost_contact, &contact_homology);
    Ok(report::ComparisonOutput {
        format_version: FORMAT_VERSION,
        first: report::NamedManifold {
            name: da.name().to_string(),
            manifold: x,
        },
        second: report::NamedManifold {
            name: db.name().to_string(),
            manifold: y,
        },
        diffeomorphic,
        almost_contact,
        contact_homology,
        verdict,
        narrative,
    })
}

pub fn render(doc: &Document, format: Format) -> String {
    match format {
        Format::Text => doc.to_text(),
        Format::Json => doc.to_json(),
    }
}
