// Placeholder bundle; the editor build replaces this file.
fetch("/api/exercises").then((r) => r.json()).then((c) => {
  document.getElementById("app").textContent = c.exercises.length + " exercises available.";
});
