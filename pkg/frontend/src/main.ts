import { ApiClient } from "./api.js";
import { initApp } from "./app.js";

const root = document.getElementById("app");
if (!root) throw new Error("page is missing the #app container");
initApp(root, new ApiClient(""));
