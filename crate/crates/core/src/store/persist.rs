//! On-disk layout of a store directory:
//!
//! ```text
//! registry.json      namespaces + one entry per graph (IRI, domain, provenance, file)
//! graphs/NNNN.nt     N-Triples export of each graph
//! ```

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Store, StoreError};
use crate::namespace::Namespaces;
use crate::provenance::GraphInfo;

pub const REGISTRY_FILE: &str = "registry.json";

#[derive(Debug, Serialize, Deserialize)]
struct Registry {
    namespaces: Namespaces,
    graphs: Vec<RegistryEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RegistryEntry {
    #[serde(flatten)]
    info: GraphInfo,
    file: String,
}

impl Store {
    pub fn save_dir(&self, dir: &Path) -> Result<(), StoreError> {
        let graph_dir = dir.join("graphs");
        fs::create_dir_all(&graph_dir)?;
        let mut entries = Vec::new();
        for (i, info) in self.graphs().enumerate() {
            let file = format!("graphs/{i:04}.nt");
            fs::write(dir.join(&file), self.export_graph(Some(&info.graph)))?;
            entries.push(RegistryEntry {
                info: info.clone(),
                file,
            });
        }
        let registry = Registry {
            namespaces: self.namespaces.clone(),
            graphs: entries,
        };
        let json = serde_json::to_string_pretty(&registry)
            .map_err(|e| StoreError::Registry(e.to_string()))?;
        fs::write(dir.join(REGISTRY_FILE), json)?;
        Ok(())
    }

    /// Loads a directory written by [`Store::save_dir`]. A missing directory
    /// yields an empty store.
    pub fn load_dir(dir: &Path) -> Result<Store, StoreError> {
        let mut store = Store::new();
        let registry_path = dir.join(REGISTRY_FILE);
        if !registry_path.exists() {
            return Ok(store);
        }
        let registry: Registry = serde_json::from_str(&fs::read_to_string(registry_path)?)
            .map_err(|e| StoreError::Registry(e.to_string()))?;
        store.namespaces.extend(&registry.namespaces);
        for entry in registry.graphs {
            let graph = entry.info.graph.clone();
            store.register_graph(entry.info);
            let doc = fs::read_to_string(dir.join(&entry.file))?;
            store.import_graph(&doc, &graph)?;
        }
        Ok(store)
    }
}
